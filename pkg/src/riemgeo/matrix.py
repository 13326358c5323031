"""Symmetric positive definite matrices and the rotation group.

All kernels accept stacked inputs (leading batch axes before the trailing
(n, n) matrix axes); the power manifold relies on this to run grid-sized
operations in single vectorized calls.

Matrix exp/log on symmetric matrices go through a symmetric
eigendecomposition. Inputs to the SPD kernels are symmetrized first:
asymmetry from floating-point drift is silently repaired, and asymmetry
beyond tolerance is caught by the validation decorator, not here. For 3x3
rotations the production kernels use the axis-angle closed form; other sizes
fall back to a dense matrix exponential/logarithm.
"""

from __future__ import annotations

import math

import numpy as np
import scipy.linalg

from .core import (
    DEFAULT_TOL,
    EmbeddingInfo,
    InverseRetractionUndefined,
    LogUndefined,
    Manifold,
    TransportUndefined,
)

__all__ = ["SymmetricPositiveDefinite", "Rotations", "sym", "skew", "mexp_sym", "mlog_spd"]

# mlog refuses eigenvalues at or below this floor (numerically singular).
_EIG_FLOOR = 1e-12
# project_point clamps eigenvalues to this value so that projected points
# pass the default membership tolerance with margin
_PROJECT_EIG_FLOOR = 1e-6
_SERIES_ANGLE = 1e-4
_LOG_ANGLE_TOL = 1e-6


def _first_bad_index(mask):
    mask = np.asarray(mask)
    if mask.ndim == 0:
        return None
    return tuple(int(i) for i in np.unravel_index(int(np.argmax(mask)), mask.shape))


def sym(a):
    """Symmetric part (a + a^T) / 2 over the trailing matrix axes."""
    a = np.asarray(a, dtype=float)
    return 0.5 * (a + np.swapaxes(a, -1, -2))


def skew(a):
    """Antisymmetric part (a - a^T) / 2 over the trailing matrix axes."""
    a = np.asarray(a, dtype=float)
    return 0.5 * (a - np.swapaxes(a, -1, -2))


def _eig_apply(w, V, fn):
    """V diag(fn(w)) V^T for stacked eigendecompositions."""
    return np.einsum("...ij,...j,...kj->...ik", V, fn(w), V)


def mexp_sym(a):
    """Matrix exponential of a symmetric matrix (eigendecomposition based)."""
    w, V = np.linalg.eigh(sym(a))
    return _eig_apply(w, V, np.exp)


def mlog_spd(a):
    """Matrix logarithm of a symmetric positive definite matrix.

    Raises LogUndefined when an eigenvalue falls at or below the numeric
    floor, i.e. the argument is singular or indefinite.
    """
    w, V = np.linalg.eigh(sym(a))
    bad = w[..., 0] <= _EIG_FLOOR
    if np.any(bad):
        raise LogUndefined(
            "matrix log needs eigenvalues above the singularity floor",
            component=_first_bad_index(bad),
        )
    return _eig_apply(w, V, np.log)


class SymmetricPositiveDefinite(Manifold):
    """SPD(n) with the affine-invariant metric tr(p^-1 X p^-1 Y).

    Points are symmetric with strictly positive eigenvalues; tangent vectors
    are symmetric matrices. The injectivity radius is infinite. Distances are
    invariant under congruence p -> A p A^T by any invertible A.
    """

    kind = "spd"
    metric_tag = "linear_affine"

    def __init__(self, n):
        if n < 1:
            raise ValueError("matrix size must be at least 1")
        self.n = int(n)

    def _shape_params(self):
        return (self.n,)

    @property
    def dim(self):
        return self.n * (self.n + 1) // 2

    @property
    def point_shape(self):
        return (self.n, self.n)

    @property
    def embedding(self):
        return EmbeddingInfo((self.n, self.n), isometric=False)

    def _sqrt_pair(self, p):
        """(p^{1/2}, p^{-1/2}) via symmetric eigendecomposition."""
        w, V = np.linalg.eigh(sym(p))
        bad = w[..., 0] <= _EIG_FLOOR
        if np.any(bad):
            raise LogUndefined(
                "base point is numerically singular",
                component=_first_bad_index(bad),
            )
        sw = np.sqrt(w)
        s = np.einsum("...ij,...j,...kj->...ik", V, sw, V)
        si = np.einsum("...ij,...j,...kj->...ik", V, 1.0 / sw, V)
        return s, si

    def _exp(self, p, X):
        s, si = self._sqrt_pair(p)
        return s @ mexp_sym(si @ sym(X) @ si) @ s

    def _log(self, p, q):
        s, si = self._sqrt_pair(p)
        return s @ mlog_spd(si @ sym(q) @ si) @ s

    def _distance(self, p, q):
        _, si = self._sqrt_pair(p)
        w, _ = np.linalg.eigh(sym(si @ sym(q) @ si))
        bad = w[..., 0] <= _EIG_FLOOR
        if np.any(bad):
            raise LogUndefined(
                "distance target is numerically singular",
                component=_first_bad_index(bad),
            )
        lw = np.log(w)
        return np.sqrt(np.sum(lw * lw, axis=-1))

    def _inner(self, p, X, Y):
        A = np.linalg.solve(sym(p), sym(X))
        B = np.linalg.solve(sym(p), sym(Y))
        return np.einsum("...ij,...ji->...", A, B)

    def _parallel_transport(self, p, q, X):
        s, si = self._sqrt_pair(p)
        w, V = np.linalg.eigh(sym(si @ sym(q) @ si))
        bad = w[..., 0] <= _EIG_FLOOR
        if np.any(bad):
            raise TransportUndefined(
                "transport target is numerically singular",
                component=_first_bad_index(bad),
            )
        # E = (q p^-1)^(1/2) = s (s^-1 q s^-1)^(1/2) s^-1
        E = s @ _eig_apply(w, V, np.sqrt) @ si
        return E @ sym(X) @ np.swapaxes(E, -1, -2)

    def _project_point(self, a):
        w, V = np.linalg.eigh(sym(a))
        return _eig_apply(np.maximum(w, _PROJECT_EIG_FLOOR), V, lambda x: x)

    def _project_tangent(self, p, a):
        return sym(a)

    def _inverse_retract_projection(self, p, q):
        return sym(q) - sym(p)

    def is_point(self, p, tol=DEFAULT_TOL):
        p = np.asarray(p)
        if p.shape != self.point_shape or not np.all(np.isfinite(p)):
            return False
        if np.max(np.abs(p - p.T)) > tol:
            return False
        return bool(np.linalg.eigvalsh(sym(p))[0] > tol)

    def is_tangent(self, p, X, tol=DEFAULT_TOL):
        X = np.asarray(X)
        if X.shape != self.point_shape or not np.all(np.isfinite(X)):
            return False
        return bool(np.max(np.abs(X - X.T)) <= tol)

    def _rand_point(self, rng, batch=()):
        g = rng.standard_normal(batch + self.point_shape)
        return mexp_sym(0.5 * sym(g))

    def _rand_tangent(self, p, rng):
        return sym(rng.standard_normal(np.asarray(p).shape))

    def _basis_vectors(self, p):
        # s E_ij s over the Frobenius-orthonormal symmetric basis E_ij,
        # upper triangle in row-major order (orthonormal in the affine metric)
        s, _ = self._sqrt_pair(np.asarray(p, float))
        vectors = []
        for i in range(self.n):
            for j in range(i, self.n):
                E = np.zeros((self.n, self.n))
                if i == j:
                    E[i, i] = 1.0
                else:
                    E[i, j] = E[j, i] = 1.0 / math.sqrt(2.0)
                vectors.append(s @ E @ s)
        return vectors


def _skew_vec(a):
    """(3,)-vector of a 3x3 antisymmetric matrix (batched)."""
    return np.stack([a[..., 2, 1], a[..., 0, 2], a[..., 1, 0]], axis=-1)


def _rotation_angle(w):
    """Rotation angle of stacked 3x3 rotation matrices."""
    half = 0.5 * (w - np.swapaxes(w, -1, -2))
    v = _skew_vec(half)
    sin_t = np.sqrt(np.sum(v * v, axis=-1))
    cos_t = 0.5 * (np.trace(w, axis1=-2, axis2=-1) - 1.0)
    return np.arctan2(sin_t, cos_t)


def _mexp_skew3(omega):
    """Axis-angle (Rodrigues) exponential of stacked 3x3 skew matrices."""
    v = _skew_vec(omega)
    theta = np.sqrt(np.sum(v * v, axis=-1))[..., None, None]
    small = theta < _SERIES_ANGLE
    t2 = theta * theta
    safe = np.where(small, 1.0, theta)
    s = np.where(small, 1.0 - t2 / 6.0 + t2 * t2 / 120.0, np.sin(safe) / safe)
    k = np.where(small, 0.5 - t2 / 24.0 + t2 * t2 / 720.0, (1.0 - np.cos(safe)) / (safe * safe))
    eye = np.broadcast_to(np.eye(3), omega.shape)
    return eye + s * omega + k * (omega @ omega)


def _mlog_rot3(w):
    """Axis-angle logarithm of stacked 3x3 rotation matrices.

    Raises LogUndefined within _LOG_ANGLE_TOL of angle pi, where the
    rotation axis is not determined by the matrix.
    """
    theta = _rotation_angle(w)
    bad = theta > np.pi - _LOG_ANGLE_TOL
    if np.any(bad):
        raise LogUndefined(
            "rotation angle too close to pi for a unique logarithm",
            component=_first_bad_index(bad),
        )
    th = theta[..., None, None]
    small = th < _SERIES_ANGLE
    t2 = th * th
    safe = np.where(small, 1.0, th)
    f = np.where(small, 0.5 + t2 / 12.0 + 7.0 * t2 * t2 / 720.0, safe / (2.0 * np.sin(safe)))
    return f * (w - np.swapaxes(w, -1, -2))


def _mexp_skew_general(omega):
    out = np.empty_like(omega)
    flat = omega.reshape((-1,) + omega.shape[-2:])
    oflat = out.reshape((-1,) + omega.shape[-2:])
    for i in range(flat.shape[0]):
        oflat[i] = scipy.linalg.expm(flat[i])
    return out


def _mlog_rot_general(w, angle_guard=True):
    angles = np.angle(np.linalg.eigvals(w))
    if angle_guard and np.any(np.max(np.abs(angles), axis=-1) > np.pi - _LOG_ANGLE_TOL):
        raise LogUndefined("rotation angle too close to pi for a unique logarithm")
    out = np.empty_like(w)
    flat = w.reshape((-1,) + w.shape[-2:])
    oflat = out.reshape((-1,) + w.shape[-2:])
    for i in range(flat.shape[0]):
        lw = scipy.linalg.logm(flat[i])
        oflat[i] = skew(np.real(lw))
    return out


class Rotations(Manifold):
    """SO(n): orthogonal matrices with determinant +1.

    Tangent vectors at p are stored as ambient matrices p @ K with K
    antisymmetric; the metric is the plain Frobenius inner product on those
    ambient tangents, so the distance at rotation angle theta is
    sqrt(2) * theta for n = 3 and the injectivity radius is sqrt(2) * pi.
    """

    kind = "rotations"
    metric_tag = "frobenius"

    def __init__(self, n):
        if n < 2:
            raise ValueError("rotation group needs n >= 2")
        self.n = int(n)

    def _shape_params(self):
        return (self.n,)

    @property
    def dim(self):
        return self.n * (self.n - 1) // 2

    @property
    def point_shape(self):
        return (self.n, self.n)

    @property
    def injectivity_radius(self):
        return math.sqrt(2.0) * math.pi

    @property
    def embedding(self):
        return EmbeddingInfo((self.n, self.n), isometric=True)

    def _mexp_skew(self, omega):
        if self.n == 3:
            return _mexp_skew3(omega)
        return _mexp_skew_general(omega)

    def _mlog_rot(self, w):
        if self.n == 3:
            return _mlog_rot3(w)
        return _mlog_rot_general(w)

    def _exp(self, p, X):
        p = np.asarray(p, float)
        return p @ self._mexp_skew(skew(np.swapaxes(p, -1, -2) @ np.asarray(X, float)))

    def _log(self, p, q):
        p = np.asarray(p, float)
        return p @ self._mlog_rot(np.swapaxes(p, -1, -2) @ np.asarray(q, float))

    def _distance(self, p, q):
        p = np.asarray(p, float)
        w = np.swapaxes(p, -1, -2) @ np.asarray(q, float)
        if self.n == 3:
            return math.sqrt(2.0) * _rotation_angle(w)
        angles = np.angle(np.linalg.eigvals(w))
        return np.sqrt(np.sum(angles * angles, axis=-1))

    def _inner(self, p, X, Y):
        return np.einsum("...ij,...ij->...", np.asarray(X, float), np.asarray(Y, float))

    def _parallel_transport(self, p, q, X):
        p = np.asarray(p, float)
        pt = np.swapaxes(p, -1, -2)
        try:
            omega = self._mlog_rot(pt @ np.asarray(q, float))
        except LogUndefined as err:
            raise TransportUndefined(
                "no unique geodesic for transport at rotation angle pi",
                component=err.component,
            ) from err
        h = self._mexp_skew(0.5 * omega)
        return p @ h @ (pt @ np.asarray(X, float)) @ h

    def _project_point(self, a):
        u, s, vt = np.linalg.svd(np.asarray(a, dtype=float))
        d = np.linalg.det(u @ vt)
        # flip the last singular direction where the determinant is negative
        flip = np.ones_like(s)
        flip[..., -1] = np.sign(d)
        return (u * flip[..., None, :]) @ vt

    def _project_tangent(self, p, a):
        p = np.asarray(p, float)
        return p @ skew(np.swapaxes(p, -1, -2) @ np.asarray(a, float))

    def _inverse_retract_projection(self, p, q):
        p = np.asarray(p, float)
        q = np.asarray(q, float)
        if p.ndim != 2:
            raise InverseRetractionUndefined(
                "projection inverse retraction is single-point only"
            )
        w = p.T @ q
        try:
            s = scipy.linalg.solve_continuous_lyapunov(w, 2.0 * np.eye(self.n))
        except np.linalg.LinAlgError as err:
            raise InverseRetractionUndefined(str(err)) from err
        if np.linalg.eigvalsh(sym(s))[0] <= 0.0:
            raise InverseRetractionUndefined(
                "no symmetric positive factor solves the polar equation"
            )
        return q @ s - p

    def is_point(self, p, tol=DEFAULT_TOL):
        p = np.asarray(p)
        if p.shape != self.point_shape or not np.all(np.isfinite(p)):
            return False
        if np.max(np.abs(p.T @ p - np.eye(self.n))) > tol:
            return False
        return bool(np.linalg.det(p) > 0.0)

    def is_tangent(self, p, X, tol=DEFAULT_TOL):
        X = np.asarray(X)
        if X.shape != self.point_shape or not np.all(np.isfinite(X)):
            return False
        k = np.asarray(p, float).T @ X
        return bool(np.max(np.abs(k + k.T)) <= tol)

    def _rand_point(self, rng, batch=()):
        # QR-based Haar sampling with sign fix, then a column flip into SO(n)
        g = rng.standard_normal(batch + self.point_shape)
        q, r = np.linalg.qr(g)
        d = np.diagonal(r, axis1=-2, axis2=-1)
        q = q * np.where(d == 0.0, 1.0, np.sign(d))[..., None, :]
        det = np.linalg.det(q)
        flip = np.ones(batch + (self.n,))
        flip[..., 0] = np.where(det < 0.0, -1.0, 1.0)
        return q * flip[..., None, :]

    def _rand_tangent(self, p, rng):
        return self._project_tangent(p, rng.standard_normal(np.asarray(p).shape))

    def _basis_vectors(self, p):
        p = np.asarray(p, float)
        vectors = []
        inv_sqrt2 = 1.0 / math.sqrt(2.0)
        for i in range(self.n):
            for j in range(i + 1, self.n):
                K = np.zeros((self.n, self.n))
                K[i, j] = -inv_sqrt2
                K[j, i] = inv_sqrt2
                vectors.append(p @ K)
        return vectors
