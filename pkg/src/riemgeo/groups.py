"""Lie group structure on top of a manifold.

Two pairings are constructible: Euclidean space under addition and the
rotation group under matrix multiplication. Other combinations are rejected
at construction. Lie algebra elements are stored as ambient tangent arrays at
the identity, the same layout as any other tangent vector.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .core import DEFAULT_TOL, Manifold
from .elementary import Euclidean
from .matrix import Rotations

__all__ = ["GroupOperation", "Side", "GroupManifold"]


class GroupOperation(Enum):
    ADDITION = "addition"
    MULTIPLICATION = "multiplication"


class Side(Enum):
    LEFT = "left"
    RIGHT = "right"


class GroupManifold(Manifold):
    """Equips a base manifold with a group operation.

    Geometric operations delegate to the base manifold; the group structure
    adds identity, composition, inversion, translations, and the group
    exponential/logarithm. For addition the group exp/log are the identity
    maps on arrays; for multiplication they are the matrix exponential and
    logarithm of the skew generator, which coincide with the Riemannian maps
    at the identity (the metric is bi-invariant).
    """

    kind = "group"

    def __init__(self, base, operation):
        if operation is GroupOperation.ADDITION:
            if not isinstance(base, Euclidean):
                raise ValueError("the addition operation requires a Euclidean base")
        elif operation is GroupOperation.MULTIPLICATION:
            if not isinstance(base, Rotations):
                raise ValueError("the multiplication operation requires a Rotations base")
        else:
            raise TypeError("operation must be a GroupOperation")
        self.base = base
        self.operation = operation

    def _shape_params(self):
        return (self.base.descriptor, self.operation.value)

    @property
    def metric_tag(self):
        return self.base.metric_tag

    @property
    def dim(self):
        return self.base.dim

    @property
    def point_shape(self):
        return self.base.point_shape

    @property
    def injectivity_radius(self):
        return self.base.injectivity_radius

    @property
    def embedding(self):
        return self.base.embedding

    # -- manifold interface, delegated --------------------------------------

    def _exp(self, p, X):
        return self.base._exp(p, X)

    def _log(self, p, q):
        return self.base._log(p, q)

    def _distance(self, p, q):
        return self.base._distance(p, q)

    def _inner(self, p, X, Y):
        return self.base._inner(p, X, Y)

    def _parallel_transport(self, p, q, X):
        return self.base._parallel_transport(p, q, X)

    def _project_point(self, a):
        return self.base._project_point(a)

    def _project_tangent(self, p, a):
        return self.base._project_tangent(p, a)

    def _inverse_retract_projection(self, p, q):
        return self.base._inverse_retract_projection(p, q)

    def is_point(self, p, tol=DEFAULT_TOL):
        return self.base.is_point(p, tol)

    def is_tangent(self, p, X, tol=DEFAULT_TOL):
        return self.base.is_tangent(p, X, tol)

    def _rand_point(self, rng, batch=()):
        return self.base._rand_point(rng, batch)

    def _rand_tangent(self, p, rng):
        return self.base._rand_tangent(p, rng)

    def _basis_vectors(self, p):
        return self.base._basis_vectors(p)

    # -- group structure ------------------------------------------------------

    def identity_element(self, *, out=None):
        """Neutral element: the zero array or the identity matrix."""
        if self.operation is GroupOperation.ADDITION:
            e = np.zeros(self.point_shape)
        else:
            e = np.eye(self.base.n)
        return self._finish(e, out)

    def compose(self, p, q, *, out=None):
        """Group composition p o q."""
        if self.operation is GroupOperation.ADDITION:
            result = np.asarray(p, float) + np.asarray(q, float)
        else:
            result = np.asarray(p, float) @ np.asarray(q, float)
        return self._finish(result, out)

    def inverse(self, p, *, out=None):
        """Group inverse: negation, or the transpose for rotations."""
        if self.operation is GroupOperation.ADDITION:
            result = -np.asarray(p, float)
        else:
            result = np.swapaxes(np.asarray(p, float), -1, -2).copy()
        return self._finish(result, out)

    def translate(self, g, p, side=Side.LEFT, *, out=None):
        """g o p (left) or p o g (right)."""
        if side is Side.LEFT:
            return self.compose(g, p, out=out)
        if side is Side.RIGHT:
            return self.compose(p, g, out=out)
        raise ValueError(f"unsupported side: {side!r}")

    def inverse_translate(self, g, p, side=Side.LEFT, *, out=None):
        """Undo translate(g, ., side) exactly."""
        if side is Side.LEFT:
            return self.compose(self.inverse(g), p, out=out)
        if side is Side.RIGHT:
            return self.compose(p, self.inverse(g), out=out)
        raise ValueError(f"unsupported side: {side!r}")

    def group_exp(self, X, *, out=None):
        """Group exponential of a Lie algebra element (tangent at identity)."""
        if self.operation is GroupOperation.ADDITION:
            result = np.array(X, dtype=float, copy=True)
        else:
            result = self.base._exp(np.eye(self.base.n), np.asarray(X, float))
        return self._finish(result, out)

    def group_log(self, p, *, out=None):
        """Group logarithm; inverse of group_exp on its injectivity domain."""
        if self.operation is GroupOperation.ADDITION:
            result = np.array(p, dtype=float, copy=True)
        else:
            result = self.base._log(np.eye(self.base.n), np.asarray(p, float))
        return self._finish(result, out)
