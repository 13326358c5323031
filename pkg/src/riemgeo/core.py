"""Generic Riemannian manifold interface.

Every geometric operation that produces an array comes in two forms: the
allocating form (``out=None``, returns a fresh array) and the in-place form
(``out=<buffer>``, writes into the caller-provided buffer and returns it).
Both forms produce bit-identical values, and the in-place form tolerates the
output buffer aliasing an input because results are fully computed before
being copied into ``out``.

Manifolds are immutable descriptor objects: two instances with equal
parameters compare equal and are interchangeable. All operations are pure
functions of their inputs; the only mutation ever performed is the write into
a caller-provided ``out`` buffer, so manifolds, points, and bases are safe to
share across threads. Random generation takes an explicit caller-owned
``numpy.random.Generator``.

Operations accept arrays with extra leading axes and broadcast over them
(points are the trailing ``point_shape`` axes); scalar-valued operations then
return arrays instead of floats. Point/tangent membership checks
(``is_point``/``is_tangent``) are single-point only.
"""

from __future__ import annotations

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

__all__ = [
    "GeometryError",
    "LogUndefined",
    "TransportUndefined",
    "InverseRetractionUndefined",
    "ProjectionUndefined",
    "ValidationError",
    "MaxIterationsExceeded",
    "Retraction",
    "InverseRetraction",
    "VectorTransport",
    "ManifoldDescriptor",
    "EmbeddingInfo",
    "TangentBasis",
    "Manifold",
    "DEFAULT_TOL",
    "scale_tangent",
    "add_tangents",
    "zeros_like_tangent",
]

DEFAULT_TOL = 1e-8


class GeometryError(Exception):
    """Base class for recoverable geometric errors.

    ``component`` identifies the failing component of a power or product
    manifold (grid multi-index or factor index), or is None for plain
    manifolds.
    """

    def __init__(self, message, component=None):
        super().__init__(message)
        self.component = component


class LogUndefined(GeometryError):
    """No unique minimizing geodesic reaches the target point."""


class TransportUndefined(GeometryError):
    """Parallel transport needs a unique geodesic and none exists."""


class InverseRetractionUndefined(GeometryError):
    """The chosen retraction cannot be inverted for these arguments."""


class ProjectionUndefined(GeometryError):
    """The ambient array has no well-defined projection onto the manifold."""


class ValidationError(GeometryError):
    """An input or output failed a manifold membership check."""


class MaxIterationsExceeded(GeometryError):
    """An iterative solver stopped before reaching its tolerance."""


class Retraction(Enum):
    EXPONENTIAL = "exponential"
    PROJECTION = "projection"


class InverseRetraction(Enum):
    LOGARITHMIC = "logarithmic"
    PROJECTION = "projection"


class VectorTransport(Enum):
    PARALLEL = "parallel"
    PROJECTION = "projection"


class ManifoldDescriptor(NamedTuple):
    """Immutable identity of a manifold: family, shape parameters, metric."""

    kind: str
    shape: tuple
    metric_tag: str


@dataclass(frozen=True)
class EmbeddingInfo:
    """Shape of the ambient space and whether the metric is inherited.

    When ``isometric`` is true the manifold inner product of two tangent
    vectors equals their ambient Euclidean inner product.
    """

    ambient_shape: tuple
    isometric: bool


@dataclass(frozen=True, eq=False)
class TangentBasis:
    """Ordered orthonormal basis of a tangent space.

    ``vectors`` has length ``manifold.dim`` and satisfies
    ``inner(base, v_i, v_j) == delta_ij`` within tolerance.
    """

    base: object
    vectors: tuple

    def __len__(self):
        return len(self.vectors)


def scale_tangent(alpha, X):
    """alpha * X, supporting tuple-valued product-manifold tangents."""
    if isinstance(X, tuple):
        return tuple(alpha * x for x in X)
    return alpha * np.asarray(X)


def add_tangents(X, Y, alpha=1.0):
    """X + alpha * Y, supporting tuple-valued product-manifold tangents."""
    if isinstance(X, tuple):
        return tuple(x + alpha * y for x, y in zip(X, Y))
    return np.asarray(X) + alpha * np.asarray(Y)


def zeros_like_tangent(X):
    if isinstance(X, tuple):
        return tuple(np.zeros_like(x) for x in X)
    return np.zeros_like(X)


def _as_float_array(a):
    return np.asarray(a, dtype=float)


class Manifold(ABC):
    """Abstract Riemannian manifold with closed-form operations.

    Subclasses implement the batch-aware raw kernels (``_exp``, ``_log``,
    ...); the public methods add the allocating/in-place convention and
    method dispatch for retractions and vector transports. Raw kernels do
    not validate their inputs; wrap a manifold in
    :class:`riemgeo.validation.ValidationManifold` to get checked operations.
    """

    kind = "abstract"
    metric_tag = "none"

    # -- identity ---------------------------------------------------------

    @property
    @abstractmethod
    def dim(self):
        """Intrinsic dimension (a pure function of the descriptor)."""

    @property
    @abstractmethod
    def point_shape(self):
        """Trailing array shape of a single point."""

    @property
    def injectivity_radius(self):
        """Radius below which exp is invertible (documented per manifold)."""
        return math.inf

    @property
    def embedding(self):
        """EmbeddingInfo when the manifold lives in an ambient array space."""
        return None

    @property
    def descriptor(self):
        return ManifoldDescriptor(self.kind, self._shape_params(), self.metric_tag)

    def _shape_params(self):
        raise NotImplementedError

    def __eq__(self, other):
        if type(self) is not type(other):
            return NotImplemented
        return self.descriptor == other.descriptor

    def __hash__(self):
        return hash(self.descriptor)

    def __repr__(self):
        params = ", ".join(str(s) for s in self._shape_params())
        return f"{type(self).__name__}({params})"

    # -- raw kernels (batch-aware, unvalidated) ---------------------------

    @abstractmethod
    def _exp(self, p, X):
        ...

    @abstractmethod
    def _log(self, p, q):
        ...

    @abstractmethod
    def _distance(self, p, q):
        ...

    @abstractmethod
    def _inner(self, p, X, Y):
        ...

    @abstractmethod
    def _parallel_transport(self, p, q, X):
        ...

    @abstractmethod
    def _project_point(self, a):
        ...

    @abstractmethod
    def _project_tangent(self, p, a):
        ...

    def _inverse_retract_projection(self, p, q):
        raise InverseRetractionUndefined(
            f"projection inverse retraction is not available on {self!r}"
        )

    @abstractmethod
    def _rand_point(self, rng, batch=()):
        ...

    @abstractmethod
    def _rand_tangent(self, p, rng):
        ...

    @abstractmethod
    def _basis_vectors(self, p):
        """Deterministic orthonormal tangent basis at p, as a list."""

    # -- output handling ---------------------------------------------------

    def _finish(self, result, out):
        if out is None:
            return result
        np.copyto(out, result)
        return out

    @staticmethod
    def _finish_array(result, out):
        """Finisher for plain array outputs (e.g. coordinate vectors)."""
        if out is None:
            return result
        np.copyto(out, result)
        return out

    def copy_point(self, p):
        return np.array(p, dtype=float, copy=True)

    def _same_point(self, p, q, tol=DEFAULT_TOL):
        return np.allclose(p, q, rtol=0.0, atol=tol)

    @staticmethod
    def _scalarize(x):
        x = np.asarray(x)
        return float(x) if x.ndim == 0 else x

    # -- geometric operations ----------------------------------------------

    def exp(self, p, X, *, out=None):
        """Point reached at t=1 along the geodesic from p with velocity X."""
        return self._finish(self._exp(p, X), out)

    def log(self, p, q, *, out=None):
        """Initial velocity of the minimizing geodesic from p to q.

        Raises LogUndefined when no unique minimizing geodesic exists.
        """
        return self._finish(self._log(p, q), out)

    def geodesic(self, p, q, t, *, out=None):
        """Point at parameter t of the geodesic from p (t=0) to q (t=1).

        The endpoints are returned exactly (no exp/log roundoff) at t=0, t=1.
        """
        if t == 0.0:
            return self._finish(self.copy_point(p), out)
        if t == 1.0:
            return self._finish(self.copy_point(q), out)
        return self._finish(self._exp(p, scale_tangent(t, self._log(p, q))), out)

    def distance(self, p, q):
        """Length of a shortest geodesic between p and q."""
        return self._scalarize(self._distance(p, q))

    def inner(self, p, X, Y):
        """Riemannian inner product of tangent vectors at p."""
        return self._scalarize(self._inner(p, X, Y))

    def norm(self, p, X):
        return self._scalarize(np.sqrt(self._inner(p, X, X)))

    def retract(self, p, X, method=Retraction.EXPONENTIAL, *, out=None):
        """First-order approximation of exp (exact for the exponential method)."""
        if method is Retraction.EXPONENTIAL:
            return self._finish(self._exp(p, X), out)
        if method is Retraction.PROJECTION:
            ambient = add_tangents(p, X) if isinstance(p, tuple) else _as_float_array(p) + X
            return self._finish(self._project_point(ambient), out)
        raise ValueError(f"unsupported retraction method: {method!r}")

    def inverse_retract(self, p, q, method=InverseRetraction.LOGARITHMIC, *, out=None):
        """Tangent X with retract(p, X, method) == q."""
        if method is InverseRetraction.LOGARITHMIC:
            return self._finish(self._log(p, q), out)
        if method is InverseRetraction.PROJECTION:
            return self._finish(self._inverse_retract_projection(p, q), out)
        raise ValueError(f"unsupported inverse retraction method: {method!r}")

    def parallel_transport(self, p, q, X, *, out=None):
        """Transport X from T_p to T_q along the minimizing geodesic.

        Isometric: inner products between transported vectors are preserved.
        Raises TransportUndefined when the geodesic is not unique.
        """
        return self._finish(self._parallel_transport(p, q, X), out)

    def vector_transport(self, p, q, X, method=VectorTransport.PARALLEL, *, out=None):
        if method is VectorTransport.PARALLEL:
            return self._finish(self._parallel_transport(p, q, X), out)
        if method is VectorTransport.PROJECTION:
            return self._finish(self._project_tangent(q, X), out)
        raise ValueError(f"unsupported vector transport method: {method!r}")

    def project_point(self, a, *, out=None):
        """Map an ambient array onto the manifold."""
        return self._finish(self._project_point(a), out)

    def project_tangent(self, p, a, *, out=None):
        """Orthogonal projection of an ambient array onto T_p (idempotent)."""
        return self._finish(self._project_tangent(p, a), out)

    # -- membership ---------------------------------------------------------

    @abstractmethod
    def is_point(self, p, tol=DEFAULT_TOL):
        """True when p satisfies the manifold constraints within tol."""

    @abstractmethod
    def is_tangent(self, p, X, tol=DEFAULT_TOL):
        """True when X lies in T_p within tol."""

    # -- randomness ----------------------------------------------------------

    def rand_point(self, rng, *, out=None):
        """Draw a random point; the result satisfies is_point exactly."""
        return self._finish(self._rand_point(rng), out)

    def rand_tangent(self, p, rng, *, out=None):
        """Draw a random tangent vector at p (projected ambient Gaussian)."""
        return self._finish(self._rand_tangent(p, rng), out)

    # -- tangent-space bases and coordinates ---------------------------------

    def default_basis(self, p):
        """Deterministic orthonormal basis of T_p."""
        vectors = self._basis_vectors(p)
        return TangentBasis(base=self.copy_point(p), vectors=tuple(vectors))

    def get_coordinates(self, p, X, basis, *, out=None):
        """Coordinates of X in an orthonormal basis at p (length dim)."""
        if not self._same_point(p, basis.base):
            raise ValueError("basis was built at a different base point")
        coords = np.array([self._scalarize(self._inner(p, X, v)) for v in basis.vectors])
        return self._finish_array(coords, out)

    def get_vector(self, p, coords, basis, *, out=None):
        """Tangent vector with the given coordinates; inverse of get_coordinates."""
        coords = np.asarray(coords, dtype=float)
        if coords.shape != (len(basis.vectors),):
            raise ValueError(
                f"expected {len(basis.vectors)} coordinates, got shape {coords.shape}"
            )
        if not self._same_point(p, basis.base):
            raise ValueError("basis was built at a different base point")
        result = zeros_like_tangent(basis.vectors[0])
        for c, v in zip(coords, basis.vectors):
            result = add_tangents(result, v, alpha=c)
        return self._finish(result, out)
