"""Flat space, the unit sphere, and hyperbolic space.

Hyperbolic space carries an explicit point-representation tag (hyperboloid,
Poincare ball, or Poincare half-space). Ball and half-space operations route
through the hyperboloid: points and tangents are converted, the hyperboloid
closed form is applied, and the result is converted back. The Minkowski form
uses signature (+, ..., +, -) with the last coordinate timelike.
"""

from __future__ import annotations

import math
from enum import Enum

import numpy as np

from .core import (
    DEFAULT_TOL,
    EmbeddingInfo,
    InverseRetractionUndefined,
    LogUndefined,
    Manifold,
    ProjectionUndefined,
    TransportUndefined,
)

__all__ = ["Euclidean", "Sphere", "Hyperbolic", "HyperbolicRepresentation"]

# Sphere log switches to a series below this angle and refuses angles near
# pi (infinitely many geodesics there). The refusal is tested on 1 + <p, q>,
# where double precision can still resolve it: the resulting window around pi
# is ~4.5e-8 wide, covering the nominal 1e-8 window that arccos itself cannot
# distinguish from noise.
_SERIES_ANGLE = 1e-4
_ANTIPODAL_COS_TOL = 1e-15


def _first_bad_index(mask):
    """Multi-index of the first failing component of a batched check."""
    mask = np.asarray(mask)
    if mask.ndim == 0:
        return None
    return tuple(int(i) for i in np.unravel_index(int(np.argmax(mask)), mask.shape))


class Euclidean(Manifold):
    """Flat space of real arrays with the standard inner product.

    ``shape`` may be an int (vectors) or a tuple (e.g. matrices).
    """

    kind = "euclidean"
    metric_tag = "euclidean"

    def __init__(self, shape):
        self.shape = (shape,) if isinstance(shape, int) else tuple(shape)

    def _shape_params(self):
        return self.shape

    @property
    def dim(self):
        return int(np.prod(self.shape))

    @property
    def point_shape(self):
        return self.shape

    @property
    def embedding(self):
        return EmbeddingInfo(self.shape, isometric=True)

    def _axes(self):
        return tuple(range(-len(self.shape), 0))

    def _exp(self, p, X):
        return np.asarray(p, float) + np.asarray(X, float)

    def _log(self, p, q):
        return np.asarray(q, float) - np.asarray(p, float)

    def _distance(self, p, q):
        d = np.asarray(q, float) - np.asarray(p, float)
        return np.sqrt(np.sum(d * d, axis=self._axes()))

    def _inner(self, p, X, Y):
        return np.sum(np.asarray(X, float) * np.asarray(Y, float), axis=self._axes())

    def _parallel_transport(self, p, q, X):
        return np.array(X, dtype=float, copy=True)

    def _project_point(self, a):
        return np.asarray(a, dtype=float).copy()

    def _project_tangent(self, p, a):
        return np.asarray(a, dtype=float).copy()

    def _inverse_retract_projection(self, p, q):
        return self._log(p, q)

    def is_point(self, p, tol=DEFAULT_TOL):
        p = np.asarray(p)
        return p.shape == self.shape and bool(np.all(np.isfinite(p)))

    def is_tangent(self, p, X, tol=DEFAULT_TOL):
        X = np.asarray(X)
        return X.shape == self.shape and bool(np.all(np.isfinite(X)))

    def _rand_point(self, rng, batch=()):
        return rng.standard_normal(batch + self.shape)

    def _rand_tangent(self, p, rng):
        return rng.standard_normal(np.asarray(p).shape)

    def _basis_vectors(self, p):
        vectors = []
        for i in range(self.dim):
            v = np.zeros(self.dim)
            v[i] = 1.0
            vectors.append(v.reshape(self.shape))
        return vectors


class Sphere(Manifold):
    """Unit sphere of intrinsic dimension n, embedded in R^(n+1).

    Points have unit norm, tangents at p are orthogonal to p, and the metric
    is the ambient inner product restricted to the tangent plane. The
    injectivity radius is pi; the log map refuses antipodal targets.
    """

    kind = "sphere"
    metric_tag = "round"

    def __init__(self, n):
        if n < 1:
            raise ValueError("sphere dimension must be at least 1")
        self.n = int(n)

    def _shape_params(self):
        return (self.n,)

    @property
    def dim(self):
        return self.n

    @property
    def point_shape(self):
        return (self.n + 1,)

    @property
    def injectivity_radius(self):
        return math.pi

    @property
    def embedding(self):
        return EmbeddingInfo((self.n + 1,), isometric=True)

    def _exp(self, p, X):
        p = np.asarray(p, float)
        X = np.asarray(X, float)
        theta = np.sqrt(np.sum(X * X, axis=-1, keepdims=True))
        # np.sinc(x) = sin(pi x)/(pi x), exact 1.0 at zero velocity
        return np.cos(theta) * p + np.sinc(theta / np.pi) * X

    def _cos_angle(self, p, q):
        c = np.sum(np.asarray(p, float) * np.asarray(q, float), axis=-1, keepdims=True)
        return np.clip(c, -1.0, 1.0)

    def _log(self, p, q):
        p = np.asarray(p, float)
        q = np.asarray(q, float)
        c = self._cos_angle(p, q)
        theta = np.arccos(c)
        bad = 1.0 + c[..., 0] < _ANTIPODAL_COS_TOL
        if np.any(bad):
            raise LogUndefined(
                "antipodal points are joined by infinitely many geodesics",
                component=_first_bad_index(bad),
            )
        small = theta < _SERIES_ANGLE
        t2 = theta * theta
        series = 1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0
        safe = np.where(small, 1.0, theta)
        factor = np.where(small, series, safe / np.sin(safe))
        return factor * (q - c * p)

    def _distance(self, p, q):
        return np.arccos(self._cos_angle(p, q))[..., 0]

    def _inner(self, p, X, Y):
        return np.sum(np.asarray(X, float) * np.asarray(Y, float), axis=-1)

    def _parallel_transport(self, p, q, X):
        p = np.asarray(p, float)
        X = np.asarray(X, float)
        try:
            u = self._log(p, q)
        except LogUndefined as err:
            raise TransportUndefined(
                "no unique geodesic between antipodal points",
                component=err.component,
            ) from err
        theta = np.sqrt(np.sum(u * u, axis=-1, keepdims=True))
        uhat = u / np.where(theta > 0.0, theta, 1.0)
        a = np.sum(uhat * X, axis=-1, keepdims=True)
        return X - a * uhat + a * (np.cos(theta) * uhat - np.sin(theta) * p)

    def _project_point(self, a):
        a = np.asarray(a, dtype=float)
        nrm = np.sqrt(np.sum(a * a, axis=-1, keepdims=True))
        bad = nrm[..., 0] == 0.0
        if np.any(bad):
            raise ProjectionUndefined(
                "the zero vector has no nearest point on the sphere",
                component=_first_bad_index(bad),
            )
        return a / nrm

    def _project_tangent(self, p, a):
        p = np.asarray(p, float)
        a = np.asarray(a, float)
        return a - np.sum(p * a, axis=-1, keepdims=True) * p

    def _inverse_retract_projection(self, p, q):
        p = np.asarray(p, float)
        q = np.asarray(q, float)
        d = np.sum(p * q, axis=-1, keepdims=True)
        bad = d[..., 0] <= 0.0
        if np.any(bad):
            raise InverseRetractionUndefined(
                "projection retraction only reaches the open hemisphere around p",
                component=_first_bad_index(bad),
            )
        return q / d - p

    def is_point(self, p, tol=DEFAULT_TOL):
        p = np.asarray(p)
        if p.shape != self.point_shape or not np.all(np.isfinite(p)):
            return False
        return bool(abs(np.linalg.norm(p) - 1.0) <= tol)

    def is_tangent(self, p, X, tol=DEFAULT_TOL):
        X = np.asarray(X)
        if X.shape != self.point_shape or not np.all(np.isfinite(X)):
            return False
        return bool(abs(float(np.dot(np.asarray(p, float), X))) <= tol)

    def _rand_point(self, rng, batch=()):
        v = rng.standard_normal(batch + self.point_shape)
        return v / np.sqrt(np.sum(v * v, axis=-1, keepdims=True))

    def _rand_tangent(self, p, rng):
        return self._project_tangent(p, rng.standard_normal(np.asarray(p).shape))

    def _basis_vectors(self, p):
        # Gram-Schmidt of the canonical ambient basis against p, fixed order.
        p = np.asarray(p, float)
        vectors = []
        for i in range(self.n + 1):
            v = np.zeros(self.n + 1)
            v[i] = 1.0
            v -= np.dot(p, v) * p
            for u in vectors:
                v -= np.dot(u, v) * u
            nrm = np.linalg.norm(v)
            if nrm > 1e-10:
                vectors.append(v / nrm)
            if len(vectors) == self.n:
                break
        return vectors


class HyperbolicRepresentation(Enum):
    HYPERBOLOID = "hyperboloid"
    POINCARE_BALL = "poincare_ball"
    POINCARE_HALF_SPACE = "poincare_half_space"


def _mink(a, b):
    """Minkowski form with signature (+, ..., +, -), last coordinate timelike."""
    s = np.sum(a[..., :-1] * b[..., :-1], axis=-1)
    return s - a[..., -1] * b[..., -1]


def _ball_from_hyperboloid(p):
    return p[..., :-1] / (1.0 + p[..., -1:])


def _hyperboloid_from_ball(y):
    r = np.sum(y * y, axis=-1, keepdims=True)
    s = 1.0 - r
    return np.concatenate([2.0 * y / s, (1.0 + r) / s], axis=-1)


def _ball_from_hyperboloid_tangent(p, V):
    z = p[..., -1:]
    return V[..., :-1] / (1.0 + z) - p[..., :-1] * V[..., -1:] / (1.0 + z) ** 2


def _hyperboloid_from_ball_tangent(y, v):
    r = np.sum(y * y, axis=-1, keepdims=True)
    s = 1.0 - r
    yv = np.sum(y * v, axis=-1, keepdims=True)
    dx = 2.0 * v / s + 4.0 * yv * y / (s * s)
    dz = 4.0 * yv / (s * s)
    return np.concatenate([dx, dz], axis=-1)


def _halfspace_from_ball(y):
    r = np.sum(y * y, axis=-1, keepdims=True)
    d = 1.0 - 2.0 * y[..., -1:] + r
    return np.concatenate([2.0 * y[..., :-1] / d, (1.0 - r) / d], axis=-1)


def _ball_from_halfspace(u):
    r = np.sum(u * u, axis=-1, keepdims=True)
    e = 1.0 + 2.0 * u[..., -1:] + r
    return np.concatenate([2.0 * u[..., :-1] / e, (r - 1.0) / e], axis=-1)


def _halfspace_from_ball_tangent(y, v):
    r = np.sum(y * y, axis=-1, keepdims=True)
    d = 1.0 - 2.0 * y[..., -1:] + r
    dd = 2.0 * np.sum(y * v, axis=-1, keepdims=True) - 2.0 * v[..., -1:]
    du = 2.0 * v[..., :-1] / d - 2.0 * y[..., :-1] * dd / (d * d)
    dn = (-2.0 * np.sum(y * v, axis=-1, keepdims=True) * d - (1.0 - r) * dd) / (d * d)
    return np.concatenate([du, dn], axis=-1)


def _ball_from_halfspace_tangent(u, v):
    r = np.sum(u * u, axis=-1, keepdims=True)
    e = 1.0 + 2.0 * u[..., -1:] + r
    de = 2.0 * np.sum(u * v, axis=-1, keepdims=True) + 2.0 * v[..., -1:]
    dy = 2.0 * v[..., :-1] / e - 2.0 * u[..., :-1] * de / (e * e)
    dn = (2.0 * np.sum(u * v, axis=-1, keepdims=True) * e - (r - 1.0) * de) / (e * e)
    return np.concatenate([dy, dn], axis=-1)


class Hyperbolic(Manifold):
    """Hyperbolic space of dimension n with an explicit point representation.

    The representation tag is required at construction. Hyperboloid points
    satisfy <p, p> = -1 in the Minkowski form with positive last coordinate;
    ball points have norm < 1; half-space points have positive last
    coordinate. The injectivity radius is infinite, so the log map never
    fails on valid points.
    """

    kind = "hyperbolic"
    metric_tag = "hyperbolic"

    def __init__(self, n, representation):
        if n < 1:
            raise ValueError("hyperbolic dimension must be at least 1")
        if not isinstance(representation, HyperbolicRepresentation):
            raise TypeError("representation must be a HyperbolicRepresentation")
        self.n = int(n)
        self.representation = representation

    def _shape_params(self):
        return (self.n, self.representation.value)

    @property
    def dim(self):
        return self.n

    @property
    def point_shape(self):
        if self.representation is HyperbolicRepresentation.HYPERBOLOID:
            return (self.n + 1,)
        return (self.n,)

    @property
    def embedding(self):
        return EmbeddingInfo(self.point_shape, isometric=False)

    # -- representation conversions ----------------------------------------

    def _to_hyperboloid(self, p):
        rep = self.representation
        p = np.asarray(p, float)
        if rep is HyperbolicRepresentation.HYPERBOLOID:
            return p
        if rep is HyperbolicRepresentation.POINCARE_BALL:
            return _hyperboloid_from_ball(p)
        return _hyperboloid_from_ball(_ball_from_halfspace(p))

    def _from_hyperboloid(self, h):
        rep = self.representation
        if rep is HyperbolicRepresentation.HYPERBOLOID:
            return h
        if rep is HyperbolicRepresentation.POINCARE_BALL:
            return _ball_from_hyperboloid(h)
        return _halfspace_from_ball(_ball_from_hyperboloid(h))

    def _tangent_to_hyperboloid(self, p, X):
        rep = self.representation
        p = np.asarray(p, float)
        X = np.asarray(X, float)
        if rep is HyperbolicRepresentation.HYPERBOLOID:
            return X
        if rep is HyperbolicRepresentation.POINCARE_BALL:
            return _hyperboloid_from_ball_tangent(p, X)
        y = _ball_from_halfspace(p)
        v = _ball_from_halfspace_tangent(p, X)
        return _hyperboloid_from_ball_tangent(y, v)

    def _tangent_from_hyperboloid(self, h, V):
        rep = self.representation
        if rep is HyperbolicRepresentation.HYPERBOLOID:
            return V
        if rep is HyperbolicRepresentation.POINCARE_BALL:
            return _ball_from_hyperboloid_tangent(h, V)
        y = _ball_from_hyperboloid(h)
        v = _ball_from_hyperboloid_tangent(h, V)
        return _halfspace_from_ball_tangent(y, v)

    def convert(self, p, to_representation, *, out=None):
        """Convert a point to another representation (an isometry)."""
        target = Hyperbolic(self.n, to_representation)
        return self._finish(target._from_hyperboloid(self._to_hyperboloid(p)), out)

    def convert_tangent(self, p, X, to_representation, *, out=None):
        """Convert a tangent vector at p to another representation."""
        target = Hyperbolic(self.n, to_representation)
        h = self._to_hyperboloid(p)
        V = self._tangent_to_hyperboloid(p, X)
        return self._finish(target._tangent_from_hyperboloid(h, V), out)

    # -- hyperboloid closed forms -------------------------------------------

    @staticmethod
    def _h_exp(p, X):
        sq = _mink(X, X)[..., None]
        theta = np.sqrt(np.maximum(sq, 0.0))
        small = theta < _SERIES_ANGLE
        t2 = theta * theta
        series = 1.0 + t2 / 6.0 + t2 * t2 / 120.0
        safe = np.where(small, 1.0, theta)
        sinhc = np.where(small, series, np.sinh(safe) / safe)
        return np.cosh(theta) * p + sinhc * X

    @staticmethod
    def _h_log(p, q):
        c = np.maximum(-_mink(p, q), 1.0)[..., None]
        theta = Hyperbolic._h_distance(p, q)[..., None]
        small = theta < _SERIES_ANGLE
        t2 = theta * theta
        series = 1.0 - t2 / 6.0 + 7.0 * t2 * t2 / 360.0
        safe = np.where(small, 1.0, theta)
        factor = np.where(small, series, safe / np.sinh(safe))
        return factor * (q - c * p)

    @staticmethod
    def _h_distance(p, q):
        # equal to arccosh(-<p, q>) but stable near coincident points:
        # <p - q, p - q> = 2 (cosh(d) - 1) = 4 sinh(d / 2)^2
        d = np.asarray(p, float) - np.asarray(q, float)
        return 2.0 * np.arcsinh(0.5 * np.sqrt(np.maximum(_mink(d, d), 0.0)))

    @staticmethod
    def _h_project_tangent(p, a):
        return a + _mink(p, a)[..., None] * p

    def _h_transport(self, p, q, X):
        u = self._h_log(p, q)
        theta = np.sqrt(np.maximum(_mink(u, u), 0.0))[..., None]
        uhat = u / np.where(theta > 0.0, theta, 1.0)
        a = _mink(uhat, X)[..., None]
        return X - a * uhat + a * (np.cosh(theta) * uhat + np.sinh(theta) * p)

    # -- manifold interface ---------------------------------------------------

    def _exp(self, p, X):
        h = self._to_hyperboloid(p)
        V = self._tangent_to_hyperboloid(p, X)
        return self._from_hyperboloid(self._h_exp(h, V))

    def _log(self, p, q):
        h = self._to_hyperboloid(p)
        V = self._h_log(h, self._to_hyperboloid(q))
        return self._tangent_from_hyperboloid(h, V)

    def _distance(self, p, q):
        return self._h_distance(self._to_hyperboloid(p), self._to_hyperboloid(q))

    def _inner(self, p, X, Y):
        h = self._to_hyperboloid(p)
        return _mink(
            self._tangent_to_hyperboloid(p, X), self._tangent_to_hyperboloid(p, Y)
        )

    def _parallel_transport(self, p, q, X):
        hp = self._to_hyperboloid(p)
        hq = self._to_hyperboloid(q)
        V = self._h_transport(hp, hq, self._tangent_to_hyperboloid(p, X))
        return self._tangent_from_hyperboloid(hq, V)

    def _project_point(self, a):
        rep = self.representation
        a = np.asarray(a, dtype=float)
        if rep is HyperbolicRepresentation.HYPERBOLOID:
            sq = -_mink(a, a)
            bad = sq <= 0.0
            if np.any(bad):
                raise ProjectionUndefined(
                    "only timelike ambient vectors project onto the hyperboloid",
                    component=_first_bad_index(bad),
                )
            h = a / np.sqrt(sq)[..., None]
            return np.where(h[..., -1:] > 0.0, h, -h)
        if rep is HyperbolicRepresentation.POINCARE_BALL:
            bad = np.sum(a * a, axis=-1) >= 1.0
        else:
            bad = a[..., -1] <= 0.0
        if np.any(bad):
            raise ProjectionUndefined(
                f"array lies outside the {rep.value} domain",
                component=_first_bad_index(bad),
            )
        return a.copy()

    def _project_tangent(self, p, a):
        rep = self.representation
        if rep is HyperbolicRepresentation.HYPERBOLOID:
            return self._h_project_tangent(np.asarray(p, float), np.asarray(a, float))
        # ball and half-space tangent spaces are all of R^n
        return np.asarray(a, dtype=float).copy()

    def _inverse_retract_projection(self, p, q):
        if self.representation is not HyperbolicRepresentation.HYPERBOLOID:
            raise InverseRetractionUndefined(
                "projection inverse retraction only applies to the hyperboloid"
            )
        p = np.asarray(p, float)
        q = np.asarray(q, float)
        lam = -1.0 / _mink(p, q)[..., None]
        return lam * q - p

    def is_point(self, p, tol=DEFAULT_TOL):
        p = np.asarray(p)
        if p.shape != self.point_shape or not np.all(np.isfinite(p)):
            return False
        rep = self.representation
        if rep is HyperbolicRepresentation.HYPERBOLOID:
            return bool(abs(float(_mink(p, p)) + 1.0) <= tol and p[-1] > 0.0)
        if rep is HyperbolicRepresentation.POINCARE_BALL:
            return bool(np.linalg.norm(p) < 1.0)
        return bool(p[-1] > 0.0)

    def is_tangent(self, p, X, tol=DEFAULT_TOL):
        X = np.asarray(X)
        if X.shape != self.point_shape or not np.all(np.isfinite(X)):
            return False
        if self.representation is HyperbolicRepresentation.HYPERBOLOID:
            return bool(abs(float(_mink(np.asarray(p, float), X))) <= tol)
        return True

    def _rand_point(self, rng, batch=()):
        # spatial Gaussian lifted onto the hyperboloid, then converted
        x = 0.8 * rng.standard_normal(batch + (self.n,))
        z = np.sqrt(1.0 + np.sum(x * x, axis=-1, keepdims=True))
        return self._from_hyperboloid(np.concatenate([x, z], axis=-1))

    def _rand_tangent(self, p, rng):
        h = self._to_hyperboloid(p)
        V = self._h_project_tangent(h, rng.standard_normal(h.shape))
        return self._tangent_from_hyperboloid(h, V)

    def _basis_vectors(self, p):
        h = self._to_hyperboloid(np.asarray(p, float))
        vectors = []
        for i in range(self.n + 1):
            a = np.zeros(self.n + 1)
            a[i] = 1.0
            v = self._h_project_tangent(h, a)
            for u in vectors:
                v = v - float(_mink(u, v)) * u
            nrm = float(_mink(v, v))
            if nrm > 1e-12:
                vectors.append(v / math.sqrt(nrm))
            if len(vectors) == self.n:
                break
        return [self._tangent_from_hyperboloid(h, v) for v in vectors]
