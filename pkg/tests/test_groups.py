"""Group structure on Euclidean space (addition) and rotations (multiplication)."""

import numpy as np
import pytest

import riemgeo as rg


@pytest.fixture
def additive():
    return rg.GroupManifold(rg.Euclidean(3), rg.GroupOperation.ADDITION)


@pytest.fixture
def rotational():
    return rg.GroupManifold(rg.Rotations(3), rg.GroupOperation.MULTIPLICATION)


def test_only_supported_pairings_construct():
    with pytest.raises(ValueError):
        rg.GroupManifold(rg.Sphere(2), rg.GroupOperation.ADDITION)
    with pytest.raises(ValueError):
        rg.GroupManifold(rg.Euclidean(3), rg.GroupOperation.MULTIPLICATION)
    with pytest.raises(TypeError):
        rg.GroupManifold(rg.Euclidean(3), "addition")


def test_identity_element(additive, rotational):
    np.testing.assert_array_equal(additive.identity_element(), np.zeros(3))
    np.testing.assert_array_equal(rotational.identity_element(), np.eye(3))
    e = rotational.identity_element()
    np.testing.assert_array_equal(rotational.compose(e, e), e)


def test_identity_is_neutral(additive, rotational, rng):
    for g in (additive, rotational):
        e = g.identity_element()
        p = g.rand_point(rng)
        np.testing.assert_allclose(g.compose(e, p), p, atol=1e-15)
        np.testing.assert_allclose(g.compose(p, e), p, atol=1e-15)


def test_addition_compose_and_inverse(additive):
    p = np.array([1.0, 2.0, 3.0])
    np.testing.assert_array_equal(
        additive.compose(p, np.array([1.0, 0.0, 0.0])), [2.0, 2.0, 3.0]
    )
    np.testing.assert_array_equal(additive.inverse(p), [-1.0, -2.0, -3.0])


def test_compose_with_inverse_gives_identity(additive, rotational, rng):
    for g in (additive, rotational):
        p = g.rand_point(rng)
        e = g.identity_element()
        np.testing.assert_allclose(g.compose(p, g.inverse(p)), e, atol=1e-12)
        np.testing.assert_allclose(g.compose(g.inverse(p), p), e, atol=1e-12)


def test_associativity_on_samples(additive, rotational, rng):
    for g in (additive, rotational):
        points = [g.rand_point(rng) for _ in range(10)]
        for _ in range(1000):
            p, q, r = (points[i] for i in rng.integers(0, len(points), size=3))
            lhs = g.compose(g.compose(p, q), r)
            rhs = g.compose(p, g.compose(q, r))
            assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_translate_sides(additive, rotational, rng):
    g, p = additive.rand_point(rng), additive.rand_point(rng)
    np.testing.assert_array_equal(additive.translate(g, p, rg.Side.LEFT), g + p)
    np.testing.assert_array_equal(additive.translate(g, p, rg.Side.RIGHT), g + p)
    # non-commuting rotations distinguish the sides
    a = rotational.group_exp(np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]))
    b = rotational.group_exp(np.array([[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]]))
    left = rotational.translate(a, b, rg.Side.LEFT)
    right = rotational.translate(a, b, rg.Side.RIGHT)
    assert np.max(np.abs(left - right)) > 1e-2


def test_inverse_translate_roundtrip(additive, rotational, rng):
    for grp in (additive, rotational):
        g = grp.rand_point(rng)
        p = grp.rand_point(rng)
        for side in rg.Side:
            t = grp.translate(g, p, side)
            np.testing.assert_allclose(grp.inverse_translate(g, t, side), p, atol=1e-12)


def test_group_exp_log_addition(additive, rng):
    X = rng.standard_normal(3)
    np.testing.assert_array_equal(additive.group_exp(X), X)
    np.testing.assert_array_equal(additive.group_log(X), X)
    np.testing.assert_array_equal(additive.group_exp(np.zeros(3)), np.zeros(3))


def test_group_exp_log_multiplication(rotational, rng):
    K = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]]) * (np.pi / 2)
    r = rotational.group_exp(K)
    np.testing.assert_allclose(
        r, rg.Rotations(3).exp(np.eye(3), K), atol=1e-15
    )
    np.testing.assert_allclose(rotational.group_log(r), K, atol=1e-12)
    np.testing.assert_allclose(
        rotational.group_exp(np.zeros((3, 3))), np.eye(3), atol=1e-12
    )
    with pytest.raises(rg.LogUndefined):
        rotational.group_log(np.diag([1.0, -1.0, -1.0]))  # angle pi


def test_group_exp_log_roundtrip_small(rotational, rng):
    for _ in range(50):
        X = 0.5 * rotational.rand_tangent(np.eye(3), rng)
        back = rotational.group_log(rotational.group_exp(X))
        assert np.max(np.abs(back - X)) < 1e-10


def test_group_exp_matches_riemannian_exp_at_identity(rotational, rng):
    # bi-invariant metric: the two exponentials coincide at the identity
    for _ in range(20):
        X = rotational.rand_tangent(np.eye(3), rng)
        np.testing.assert_allclose(
            rotational.group_exp(X),
            rotational.exp(np.eye(3), X),
            atol=1e-10,
        )


def test_group_manifold_still_is_a_manifold(rotational, rng):
    p = rotational.rand_point(rng)
    X = 0.5 * rotational.rand_tangent(p, rng)
    q = rotational.exp(p, X)
    assert rotational.is_point(q)
    np.testing.assert_allclose(rotational.log(p, q), X, atol=1e-10)
    assert rotational.dim == 3
