import numpy as np
import pytest

import riemgeo as rg

HR = rg.HyperbolicRepresentation

# (id, manifold, tangent norm cap below half the documented injectivity radius)
ZOO = [
    ("euclidean3", rg.Euclidean(3), 2.0),
    ("sphere2", rg.Sphere(2), 0.49 * np.pi),
    ("spd3", rg.SymmetricPositiveDefinite(3), 2.0),
    ("so3", rg.Rotations(3), 0.49 * np.sqrt(2.0) * np.pi),
    ("hyperboloid2", rg.Hyperbolic(2, HR.HYPERBOLOID), 2.0),
    ("ball2", rg.Hyperbolic(2, HR.POINCARE_BALL), 2.0),
    ("halfspace2", rg.Hyperbolic(2, HR.POINCARE_HALF_SPACE), 2.0),
    ("spd3_power_2x2", rg.PowerManifold(rg.SymmetricPositiveDefinite(3), (2, 2)), 2.0),
    ("product_e2_s2", rg.ProductManifold(rg.Euclidean(2), rg.Sphere(2)), 0.49 * np.pi),
]

ZOO_IDS = [name for name, _, _ in ZOO]


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def sample_point_tangent(manifold, rng, cap):
    """Random (p, X) with the tangent rescaled to a norm below cap."""
    p = manifold.rand_point(rng)
    X = manifold.rand_tangent(p, rng)
    nrm = manifold.norm(p, X)
    target = rng.uniform(0.05, 1.0) * cap
    if nrm > 0:
        X = rg.scale_tangent(target / nrm, X)
    return p, X


def tangent_diff_norm(X, Y):
    """Max absolute entrywise difference, across tuple or array tangents."""
    if isinstance(X, tuple):
        return max(float(np.max(np.abs(np.asarray(x) - np.asarray(y)))) for x, y in zip(X, Y))
    return float(np.max(np.abs(np.asarray(X) - np.asarray(Y))))


def tangent_abs_norm(X):
    if isinstance(X, tuple):
        return max(float(np.max(np.abs(np.asarray(x)))) for x in X)
    return float(np.max(np.abs(np.asarray(X))))
