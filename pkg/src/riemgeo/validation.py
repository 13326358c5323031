"""Checked wrapper around any manifold.

Every wrapped operation verifies that input and output points and tangent
vectors satisfy the manifold constraints; a violation raises ValidationError
instead of silently continuing. The wrapped manifold performs no checks of
its own, so unwrapping removes all validation cost.
"""

from __future__ import annotations

from .core import DEFAULT_TOL, Manifold, ValidationError

__all__ = ["ValidationManifold"]


class ValidationManifold(Manifold):
    """Decorator that validates the inputs and outputs of every operation."""

    kind = "validation"

    def __init__(self, manifold, tol=DEFAULT_TOL):
        if not isinstance(manifold, Manifold):
            raise TypeError("manifold must be a Manifold")
        if tol <= 0:
            raise ValueError("tolerance must be positive")
        self.manifold = manifold
        self.tol = float(tol)

    def _shape_params(self):
        return (self.manifold.descriptor, self.tol)

    @property
    def metric_tag(self):
        return self.manifold.metric_tag

    @property
    def dim(self):
        return self.manifold.dim

    @property
    def point_shape(self):
        return self.manifold.point_shape

    @property
    def injectivity_radius(self):
        return self.manifold.injectivity_radius

    @property
    def embedding(self):
        return self.manifold.embedding

    def copy_point(self, p):
        return self.manifold.copy_point(p)

    def _same_point(self, p, q, tol=DEFAULT_TOL):
        return self.manifold._same_point(p, q, tol)

    def _finish(self, result, out):
        return self.manifold._finish(result, out)

    # -- checks ----------------------------------------------------------------

    def _check_point(self, p, label):
        if not self.manifold.is_point(p, self.tol):
            raise ValidationError(f"{label} is not a point on {self.manifold!r}")
        return p

    def _check_tangent(self, p, X, label):
        if not self.manifold.is_tangent(p, X, self.tol):
            raise ValidationError(f"{label} is not tangent to {self.manifold!r}")
        return X

    # -- raw delegation (unchecked, used by generic machinery) ------------------

    def _exp(self, p, X):
        return self.manifold._exp(p, X)

    def _log(self, p, q):
        return self.manifold._log(p, q)

    def _distance(self, p, q):
        return self.manifold._distance(p, q)

    def _inner(self, p, X, Y):
        return self.manifold._inner(p, X, Y)

    def _parallel_transport(self, p, q, X):
        return self.manifold._parallel_transport(p, q, X)

    def _project_point(self, a):
        return self.manifold._project_point(a)

    def _project_tangent(self, p, a):
        return self.manifold._project_tangent(p, a)

    def _inverse_retract_projection(self, p, q):
        return self.manifold._inverse_retract_projection(p, q)

    def _rand_point(self, rng, batch=()):
        return self.manifold._rand_point(rng, batch)

    def _rand_tangent(self, p, rng):
        return self.manifold._rand_tangent(p, rng)

    def _basis_vectors(self, p):
        return self.manifold._basis_vectors(p)

    # -- checked operations ------------------------------------------------------

    def exp(self, p, X, *, out=None):
        self._check_point(p, "base point")
        self._check_tangent(p, X, "velocity")
        q = self.manifold.exp(p, X, out=out)
        self._check_point(q, "exp output")
        return q

    def log(self, p, q, *, out=None):
        self._check_point(p, "base point")
        self._check_point(q, "target point")
        X = self.manifold.log(p, q, out=out)
        self._check_tangent(p, X, "log output")
        return X

    def geodesic(self, p, q, t, *, out=None):
        self._check_point(p, "start point")
        self._check_point(q, "end point")
        g = self.manifold.geodesic(p, q, t, out=out)
        self._check_point(g, "geodesic output")
        return g

    def distance(self, p, q):
        self._check_point(p, "first point")
        self._check_point(q, "second point")
        return self.manifold.distance(p, q)

    def inner(self, p, X, Y):
        self._check_point(p, "base point")
        self._check_tangent(p, X, "first argument")
        self._check_tangent(p, Y, "second argument")
        return self.manifold.inner(p, X, Y)

    def norm(self, p, X):
        self._check_point(p, "base point")
        self._check_tangent(p, X, "argument")
        return self.manifold.norm(p, X)

    def retract(self, p, X, method=None, *, out=None):
        self._check_point(p, "base point")
        self._check_tangent(p, X, "velocity")
        args = () if method is None else (method,)
        q = self.manifold.retract(p, X, *args, out=out)
        self._check_point(q, "retraction output")
        return q

    def inverse_retract(self, p, q, method=None, *, out=None):
        self._check_point(p, "base point")
        self._check_point(q, "target point")
        args = () if method is None else (method,)
        X = self.manifold.inverse_retract(p, q, *args, out=out)
        self._check_tangent(p, X, "inverse retraction output")
        return X

    def parallel_transport(self, p, q, X, *, out=None):
        self._check_point(p, "start point")
        self._check_point(q, "end point")
        self._check_tangent(p, X, "transported vector")
        Y = self.manifold.parallel_transport(p, q, X, out=out)
        self._check_tangent(q, Y, "transport output")
        return Y

    def vector_transport(self, p, q, X, method=None, *, out=None):
        self._check_point(p, "start point")
        self._check_point(q, "end point")
        self._check_tangent(p, X, "transported vector")
        args = () if method is None else (method,)
        Y = self.manifold.vector_transport(p, q, X, *args, out=out)
        self._check_tangent(q, Y, "vector transport output")
        return Y

    def project_point(self, a, *, out=None):
        p = self.manifold.project_point(a, out=out)
        self._check_point(p, "projection output")
        return p

    def project_tangent(self, p, a, *, out=None):
        self._check_point(p, "base point")
        X = self.manifold.project_tangent(p, a, out=out)
        self._check_tangent(p, X, "tangent projection output")
        return X

    def is_point(self, p, tol=DEFAULT_TOL):
        return self.manifold.is_point(p, tol)

    def is_tangent(self, p, X, tol=DEFAULT_TOL):
        return self.manifold.is_tangent(p, X, tol)

    def rand_point(self, rng, *, out=None):
        p = self.manifold.rand_point(rng, out=out)
        self._check_point(p, "random point")
        return p

    def rand_tangent(self, p, rng, *, out=None):
        self._check_point(p, "base point")
        X = self.manifold.rand_tangent(p, rng, out=out)
        self._check_tangent(p, X, "random tangent")
        return X

    def default_basis(self, p):
        self._check_point(p, "base point")
        basis = self.manifold.default_basis(p)
        for i, v in enumerate(basis.vectors):
            self._check_tangent(p, v, f"basis vector {i}")
        return basis

    def get_coordinates(self, p, X, basis, *, out=None):
        self._check_point(p, "base point")
        self._check_tangent(p, X, "argument")
        return self.manifold.get_coordinates(p, X, basis, out=out)

    def get_vector(self, p, coords, basis, *, out=None):
        self._check_point(p, "base point")
        X = self.manifold.get_vector(p, coords, basis, out=out)
        self._check_tangent(p, X, "reconstructed vector")
        return X
