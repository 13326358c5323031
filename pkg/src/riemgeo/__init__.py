"""Riemannian geometry toolkit.

A catalog of manifolds with closed-form exponential/logarithmic maps,
retractions, parallel transport, and tangent-space bases behind one generic
interface; decorators for validation and Lie group structure; Bezier curves,
Riemannian means and variance, and tangent-space PCA on top; and a
microbenchmark CLI (``riemgeo-bench``).
"""

from .core import (
    DEFAULT_TOL,
    EmbeddingInfo,
    GeometryError,
    InverseRetraction,
    InverseRetractionUndefined,
    LogUndefined,
    Manifold,
    ManifoldDescriptor,
    MaxIterationsExceeded,
    ProjectionUndefined,
    Retraction,
    TangentBasis,
    TransportUndefined,
    ValidationError,
    VectorTransport,
    add_tangents,
    scale_tangent,
    zeros_like_tangent,
)
from .bezier import BezierCurve, bezier_point
from .composite import PowerManifold, ProductManifold
from .elementary import Euclidean, Hyperbolic, HyperbolicRepresentation, Sphere
from .groups import GroupManifold, GroupOperation, Side
from .matrix import Rotations, SymmetricPositiveDefinite
from .stats import (
    MeanOptions,
    MeanResult,
    TpcaResult,
    interpolation_mean,
    karcher_mean,
    mean_cost,
    mean_cost_gradient,
    tangent_pca,
    variance,
)
from .validation import ValidationManifold

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "EmbeddingInfo",
    "GeometryError",
    "InverseRetraction",
    "InverseRetractionUndefined",
    "LogUndefined",
    "Manifold",
    "ManifoldDescriptor",
    "MaxIterationsExceeded",
    "ProjectionUndefined",
    "Retraction",
    "TangentBasis",
    "TransportUndefined",
    "ValidationError",
    "VectorTransport",
    "add_tangents",
    "scale_tangent",
    "zeros_like_tangent",
    "BezierCurve",
    "bezier_point",
    "PowerManifold",
    "ProductManifold",
    "Euclidean",
    "Hyperbolic",
    "HyperbolicRepresentation",
    "Sphere",
    "GroupManifold",
    "GroupOperation",
    "Side",
    "Rotations",
    "SymmetricPositiveDefinite",
    "MeanOptions",
    "MeanResult",
    "TpcaResult",
    "interpolation_mean",
    "karcher_mean",
    "mean_cost",
    "mean_cost_gradient",
    "tangent_pca",
    "variance",
    "ValidationManifold",
]
