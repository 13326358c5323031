"""Compiled fixed-size kernels and benchmark loops.

The statically-shaped manifolds (3-vectors, 3x3 rotations, 3x3 SPD) get
nopython kernels so a benchmark loop measures the operation instead of
interpreter dispatch; tests pin each kernel against the corresponding
manifold method. Timing loops store every result into a fixed-size ring
accumulator, which keeps memory bounded for billions of repetitions while
still forcing the compiler to materialize each result.

This module is imported lazily (numba compilation is not free); importing
riemgeo itself does not touch it.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .core import LogUndefined

__all__ = ["KERNELS", "make_scalar_loop", "make_inplace_loop", "make_overhead_loop", "RING"]

# ring-buffer length for benchmark accumulators; must be a power of two
RING = 1024


@njit(cache=True)
def euclidean_distance(p, q):
    s = 0.0
    for i in range(p.shape[0]):
        d = q[i] - p[i]
        s += d * d
    return np.sqrt(s)


@njit(cache=True)
def euclidean_retract(out, p, X):
    for i in range(p.shape[0]):
        out[i] = p[i] + X[i]


@njit(cache=True)
def euclidean_inverse_retract(out, p, q):
    for i in range(p.shape[0]):
        out[i] = q[i] - p[i]


@njit(cache=True)
def sphere_distance(p, q):
    c = 0.0
    for i in range(p.shape[0]):
        c += p[i] * q[i]
    if c > 1.0:
        c = 1.0
    elif c < -1.0:
        c = -1.0
    return np.arccos(c)


@njit(cache=True)
def sphere_retract(out, p, X):
    sq = 0.0
    for i in range(X.shape[0]):
        sq += X[i] * X[i]
    theta = np.sqrt(sq)
    if theta > 0.0:
        s = np.sin(theta) / theta
    else:
        s = 1.0
    c = np.cos(theta)
    for i in range(p.shape[0]):
        out[i] = c * p[i] + s * X[i]


@njit(cache=True)
def sphere_inverse_retract(out, p, q):
    c = 0.0
    for i in range(p.shape[0]):
        c += p[i] * q[i]
    if c > 1.0:
        c = 1.0
    elif c < -1.0:
        c = -1.0
    if 1.0 + c < 1e-15:
        raise LogUndefined("antipodal points are joined by infinitely many geodesics")
    theta = np.arccos(c)
    if theta < 1e-4:
        t2 = theta * theta
        f = 1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0
    else:
        f = theta / np.sin(theta)
    for i in range(p.shape[0]):
        out[i] = f * (q[i] - c * p[i])


@njit(cache=True)
def _mat3_mul(out, a, b):
    for i in range(3):
        for j in range(3):
            out[i, j] = a[i, 0] * b[0, j] + a[i, 1] * b[1, j] + a[i, 2] * b[2, j]


@njit(cache=True)
def _mat3_mul_tn(out, a, b):
    # out = a^T @ b
    for i in range(3):
        for j in range(3):
            out[i, j] = a[0, i] * b[0, j] + a[1, i] * b[1, j] + a[2, i] * b[2, j]


@njit(cache=True)
def so3_distance(p, q):
    w = np.empty((3, 3))
    _mat3_mul_tn(w, p, q)
    a = 0.5 * (w[2, 1] - w[1, 2])
    b = 0.5 * (w[0, 2] - w[2, 0])
    c = 0.5 * (w[1, 0] - w[0, 1])
    sin_t = np.sqrt(a * a + b * b + c * c)
    cos_t = 0.5 * (w[0, 0] + w[1, 1] + w[2, 2] - 1.0)
    return np.sqrt(2.0) * np.arctan2(sin_t, cos_t)


@njit(cache=True)
def so3_retract(out, p, X):
    omega = np.empty((3, 3))
    _mat3_mul_tn(omega, p, X)
    # antisymmetrize to shed floating-point drift
    for i in range(3):
        for j in range(3):
            omega[i, j] = 0.5 * (omega[i, j] - omega[j, i])
    a = omega[2, 1]
    b = omega[0, 2]
    c = omega[1, 0]
    t2 = a * a + b * b + c * c
    theta = np.sqrt(t2)
    if theta < 1e-4:
        s = 1.0 - t2 / 6.0 + t2 * t2 / 120.0
        k = 0.5 - t2 / 24.0 + t2 * t2 / 720.0
    else:
        s = np.sin(theta) / theta
        k = (1.0 - np.cos(theta)) / t2
    r = np.empty((3, 3))
    om2 = np.empty((3, 3))
    _mat3_mul(om2, omega, omega)
    for i in range(3):
        for j in range(3):
            r[i, j] = s * omega[i, j] + k * om2[i, j]
        r[i, i] += 1.0
    _mat3_mul(out, p, r)


@njit(cache=True)
def so3_inverse_retract(out, p, q):
    w = np.empty((3, 3))
    _mat3_mul_tn(w, p, q)
    a = 0.5 * (w[2, 1] - w[1, 2])
    b = 0.5 * (w[0, 2] - w[2, 0])
    c = 0.5 * (w[1, 0] - w[0, 1])
    sin_t = np.sqrt(a * a + b * b + c * c)
    cos_t = 0.5 * (w[0, 0] + w[1, 1] + w[2, 2] - 1.0)
    theta = np.arctan2(sin_t, cos_t)
    if theta > np.pi - 1e-6:
        raise LogUndefined("rotation angle too close to pi for a unique logarithm")
    if theta < 1e-4:
        t2 = theta * theta
        f = 0.5 + t2 / 12.0 + 7.0 * t2 * t2 / 720.0
    else:
        f = theta / (2.0 * np.sin(theta))
    m = np.empty((3, 3))
    for i in range(3):
        for j in range(3):
            m[i, j] = f * (w[i, j] - w[j, i])
    _mat3_mul(out, p, m)


@njit(cache=True)
def _spd3_sqrt_pair(p, s, si):
    w, v = np.linalg.eigh(p)
    for i in range(3):
        if w[i] <= 1e-12:
            raise LogUndefined("matrix is numerically singular")
    for i in range(3):
        for j in range(3):
            acc_s = 0.0
            acc_i = 0.0
            for k in range(3):
                r = np.sqrt(w[k])
                acc_s += v[i, k] * r * v[j, k]
                acc_i += v[i, k] / r * v[j, k]
            s[i, j] = acc_s
            si[i, j] = acc_i


@njit(cache=True)
def spd3_distance(p, q):
    s = np.empty((3, 3))
    si = np.empty((3, 3))
    _spd3_sqrt_pair(p, s, si)
    t = np.empty((3, 3))
    m = np.empty((3, 3))
    _mat3_mul(t, si, q)
    _mat3_mul(m, t, si)
    for i in range(3):
        for j in range(i + 1, 3):
            h = 0.5 * (m[i, j] + m[j, i])
            m[i, j] = h
            m[j, i] = h
    w = np.linalg.eigvalsh(m)
    acc = 0.0
    for i in range(3):
        if w[i] <= 1e-12:
            raise LogUndefined("matrix log needs eigenvalues above the singularity floor")
        lw = np.log(w[i])
        acc += lw * lw
    return np.sqrt(acc)


@njit(cache=True)
def _spd3_eig_apply_exp(m, out):
    w, v = np.linalg.eigh(m)
    for i in range(3):
        for j in range(3):
            acc = 0.0
            for k in range(3):
                acc += v[i, k] * np.exp(w[k]) * v[j, k]
            out[i, j] = acc


@njit(cache=True)
def _spd3_eig_apply_log(m, out):
    w, v = np.linalg.eigh(m)
    for i in range(3):
        if w[i] <= 1e-12:
            raise LogUndefined("matrix log needs eigenvalues above the singularity floor")
    for i in range(3):
        for j in range(3):
            acc = 0.0
            for k in range(3):
                acc += v[i, k] * np.log(w[k]) * v[j, k]
            out[i, j] = acc


@njit(cache=True)
def _spd3_sandwich(mid, s, out):
    t = np.empty((3, 3))
    _mat3_mul(t, s, mid)
    _mat3_mul(out, t, s)


@njit(cache=True)
def _spd3_symmetrize(m):
    for i in range(3):
        for j in range(i + 1, 3):
            h = 0.5 * (m[i, j] + m[j, i])
            m[i, j] = h
            m[j, i] = h


@njit(cache=True)
def spd3_retract(out, p, X):
    s = np.empty((3, 3))
    si = np.empty((3, 3))
    _spd3_sqrt_pair(p, s, si)
    t = np.empty((3, 3))
    mid = np.empty((3, 3))
    _mat3_mul(t, si, X)
    _mat3_mul(mid, t, si)
    _spd3_symmetrize(mid)
    e = np.empty((3, 3))
    _spd3_eig_apply_exp(mid, e)
    _spd3_sandwich(e, s, out)


@njit(cache=True)
def spd3_inverse_retract(out, p, q):
    s = np.empty((3, 3))
    si = np.empty((3, 3))
    _spd3_sqrt_pair(p, s, si)
    t = np.empty((3, 3))
    mid = np.empty((3, 3))
    _mat3_mul(t, si, q)
    _mat3_mul(mid, t, si)
    _spd3_symmetrize(mid)
    lg = np.empty((3, 3))
    _spd3_eig_apply_log(mid, lg)
    _spd3_sandwich(lg, s, out)


# kernel registry: (manifold_id, op) -> ("scalar" | "inplace", kernel)
KERNELS = {
    ("euclidean3", "distance"): ("scalar", euclidean_distance),
    ("euclidean3", "retract"): ("inplace", euclidean_retract),
    ("euclidean3", "inverse_retract"): ("inplace", euclidean_inverse_retract),
    ("sphere2", "distance"): ("scalar", sphere_distance),
    ("sphere2", "retract"): ("inplace", sphere_retract),
    ("sphere2", "inverse_retract"): ("inplace", sphere_inverse_retract),
    ("so3", "distance"): ("scalar", so3_distance),
    ("so3", "retract"): ("inplace", so3_retract),
    ("so3", "inverse_retract"): ("inplace", so3_inverse_retract),
    ("spd3", "distance"): ("scalar", spd3_distance),
    ("spd3", "retract"): ("inplace", spd3_retract),
    ("spd3", "inverse_retract"): ("inplace", spd3_inverse_retract),
}


def make_scalar_loop(kernel):
    """Compiled loop running a scalar kernel reps times into a ring buffer."""

    @njit
    def loop(reps, acc, a, b):
        mask = acc.shape[0] - 1
        for i in range(reps):
            acc[i & mask] = kernel(a, b)

    return loop


def make_inplace_loop(kernel):
    """Compiled loop running an in-place kernel reps times into ring rows."""

    @njit
    def loop(reps, acc, a, b):
        mask = acc.shape[0] - 1
        for i in range(reps):
            kernel(acc[i & mask], a, b)

    return loop


def make_overhead_loop():
    """Loop with a store but no operation; calibrates the loop floor."""

    @njit
    def loop(reps, acc):
        mask = acc.shape[0] - 1
        for i in range(reps):
            acc[i & mask] = i

    return loop
