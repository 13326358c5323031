"""Power and product manifolds with componentwise operations.

A power manifold stores its grid of components in one contiguous C-order
array: grid indices outermost, the base point shape innermost, so iterating
components walks contiguous storage. Operations are executed as single
vectorized calls on the stacked array (the base kernels are batch-aware),
which keeps large grids fast; the first failing component aborts the
operation with its grid index attached, and the output buffer contents are
unspecified after any error.

Distances combine componentwise as the l2 norm, the standard product metric.
Product manifold points are heterogeneous tuples of factor points, never
flattened buffers.
"""

from __future__ import annotations

import math

import numpy as np

from .core import DEFAULT_TOL, EmbeddingInfo, GeometryError, Manifold

__all__ = ["PowerManifold", "ProductManifold"]


class PowerManifold(Manifold):
    """Grid-indexed copies of one base manifold, operated on componentwise."""

    kind = "power"
    metric_tag = "product_l2"

    def __init__(self, base, grid):
        if not isinstance(base, Manifold):
            raise TypeError("base must be a Manifold")
        if not all(isinstance(s, int) for s in base.point_shape):
            raise TypeError("power manifolds need an array-represented base point")
        self.base = base
        self.grid = (grid,) if isinstance(grid, int) else tuple(grid)
        if any(g < 1 for g in self.grid):
            raise ValueError("grid sizes must be positive")

    def _shape_params(self):
        return (self.base.descriptor, self.grid)

    @property
    def dim(self):
        return self.base.dim * int(np.prod(self.grid))

    @property
    def point_shape(self):
        return self.grid + self.base.point_shape

    @property
    def injectivity_radius(self):
        return self.base.injectivity_radius

    @property
    def embedding(self):
        info = self.base.embedding
        if info is None:
            return None
        return EmbeddingInfo(self.grid + info.ambient_shape, info.isometric)

    def _as_grid(self, a, name):
        a = np.asarray(a, dtype=float)
        if not a.flags.c_contiguous:
            raise ValueError(
                f"power manifold {name} must be C-contiguous "
                "(grid indices outermost, component entries innermost)"
            )
        return a

    def component(self, p, index):
        """View of one component (shares the contiguous backing buffer)."""
        return np.asarray(p)[tuple(np.atleast_1d(index))]

    def _exp(self, p, X):
        return self.base._exp(self._as_grid(p, "point"), self._as_grid(X, "tangent"))

    def _log(self, p, q):
        return self.base._log(self._as_grid(p, "point"), self._as_grid(q, "point"))

    def _distance(self, p, q):
        d = np.asarray(
            self.base._distance(self._as_grid(p, "point"), self._as_grid(q, "point"))
        )
        return np.sqrt(np.sum(d * d))

    def _inner(self, p, X, Y):
        values = np.asarray(
            self.base._inner(
                self._as_grid(p, "point"),
                self._as_grid(X, "tangent"),
                self._as_grid(Y, "tangent"),
            )
        )
        return np.sum(values)

    def _parallel_transport(self, p, q, X):
        return self.base._parallel_transport(
            self._as_grid(p, "point"), self._as_grid(q, "point"), self._as_grid(X, "tangent")
        )

    def _project_point(self, a):
        return self.base._project_point(self._as_grid(a, "array"))

    def _project_tangent(self, p, a):
        return self.base._project_tangent(self._as_grid(p, "point"), self._as_grid(a, "array"))

    def _inverse_retract_projection(self, p, q):
        return self.base._inverse_retract_projection(
            self._as_grid(p, "point"), self._as_grid(q, "point")
        )

    def is_point(self, p, tol=DEFAULT_TOL):
        p = np.asarray(p)
        if p.shape != self.point_shape:
            return False
        return all(self.base.is_point(p[idx], tol) for idx in np.ndindex(*self.grid))

    def is_tangent(self, p, X, tol=DEFAULT_TOL):
        p = np.asarray(p)
        X = np.asarray(X)
        if p.shape != self.point_shape or X.shape != self.point_shape:
            return False
        return all(
            self.base.is_tangent(p[idx], X[idx], tol) for idx in np.ndindex(*self.grid)
        )

    def _rand_point(self, rng, batch=()):
        return np.ascontiguousarray(self.base._rand_point(rng, batch + self.grid))

    def _rand_tangent(self, p, rng):
        return np.ascontiguousarray(self.base._rand_tangent(self._as_grid(p, "point"), rng))

    def _basis_vectors(self, p):
        p = self._as_grid(p, "point")
        vectors = []
        for idx in np.ndindex(*self.grid):
            for v in self.base._basis_vectors(p[idx]):
                full = np.zeros(self.point_shape)
                full[idx] = v
                vectors.append(full)
        return vectors


class ProductManifold(Manifold):
    """Cartesian product of manifolds; points are tuples of factor points."""

    kind = "product"
    metric_tag = "product_l2"

    def __init__(self, *factors):
        if len(factors) == 1 and isinstance(factors[0], (list, tuple)):
            factors = tuple(factors[0])
        if not factors:
            raise ValueError("a product needs at least one factor")
        for f in factors:
            if not isinstance(f, Manifold):
                raise TypeError("every factor must be a Manifold")
        self.factors = tuple(factors)

    def _shape_params(self):
        return tuple(f.descriptor for f in self.factors)

    @property
    def dim(self):
        return sum(f.dim for f in self.factors)

    @property
    def point_shape(self):
        return tuple(f.point_shape for f in self.factors)

    @property
    def injectivity_radius(self):
        return min(f.injectivity_radius for f in self.factors)

    def copy_point(self, p):
        return tuple(f.copy_point(x) for f, x in zip(self.factors, p))

    def _same_point(self, p, q, tol=DEFAULT_TOL):
        return all(
            f._same_point(x, y, tol) for f, x, y in zip(self.factors, p, q)
        )

    def _finish(self, result, out):
        if out is None:
            return tuple(result)
        for dst, src in zip(out, result):
            np.copyto(dst, src)
        return tuple(out)

    def _per_factor(self, fn):
        parts = []
        for i, factor in enumerate(self.factors):
            try:
                parts.append(fn(i, factor))
            except GeometryError as err:
                err.component = i if err.component is None else (i, err.component)
                raise
        return tuple(parts)

    def _exp(self, p, X):
        return self._per_factor(lambda i, f: f._exp(p[i], X[i]))

    def _log(self, p, q):
        return self._per_factor(lambda i, f: f._log(p[i], q[i]))

    def _distance(self, p, q):
        parts = self._per_factor(lambda i, f: f._distance(p[i], q[i]))
        return math.sqrt(sum(float(d) ** 2 for d in parts))

    def _inner(self, p, X, Y):
        parts = self._per_factor(lambda i, f: f._inner(p[i], X[i], Y[i]))
        return sum(float(v) for v in parts)

    def _parallel_transport(self, p, q, X):
        return self._per_factor(lambda i, f: f._parallel_transport(p[i], q[i], X[i]))

    def _project_point(self, a):
        return self._per_factor(lambda i, f: f._project_point(a[i]))

    def _project_tangent(self, p, a):
        return self._per_factor(lambda i, f: f._project_tangent(p[i], a[i]))

    def _inverse_retract_projection(self, p, q):
        return self._per_factor(lambda i, f: f._inverse_retract_projection(p[i], q[i]))

    def is_point(self, p, tol=DEFAULT_TOL):
        if len(p) != len(self.factors):
            return False
        return all(f.is_point(x, tol) for f, x in zip(self.factors, p))

    def is_tangent(self, p, X, tol=DEFAULT_TOL):
        if len(X) != len(self.factors):
            return False
        return all(f.is_tangent(x, v, tol) for f, x, v in zip(self.factors, p, X))

    def _rand_point(self, rng, batch=()):
        if batch:
            raise ValueError("product manifolds do not support batched sampling")
        return tuple(f._rand_point(rng) for f in self.factors)

    def _rand_tangent(self, p, rng):
        return tuple(f._rand_tangent(x, rng) for f, x in zip(self.factors, p))

    def _basis_vectors(self, p):
        vectors = []
        for i, factor in enumerate(self.factors):
            for v in factor._basis_vectors(p[i]):
                parts = [np.zeros(np.asarray(x).shape) for x in p]
                parts[i] = np.asarray(v, float)
                vectors.append(tuple(parts))
        return vectors

    def get_vector(self, p, coords, basis, *, out=None):
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (len(basis.vectors),):
            raise ValueError(
                f"expected {len(basis.vectors)} coordinates, got shape {coords.shape}"
            )
        if not self._same_point(p, basis.base):
            raise ValueError("basis was built at a different base point")
        parts = [np.zeros(np.asarray(x).shape) for x in p]
        for c, v in zip(coords, basis.vectors):
            for j in range(len(parts)):
                parts[j] += c * np.asarray(v[j])
        return self._finish(tuple(parts), out)
