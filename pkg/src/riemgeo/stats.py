"""Geometric statistics: Riemannian center of mass, variance, tangent PCA.

The center of mass minimizes the weighted sum of squared geodesic distances.
It is computed either by Riemannian gradient descent with Armijo
backtracking (permutation invariant up to solver tolerance) or by on-line
repeated geodesic interpolation (order dependent by construction, exact on
flat space). Tangent PCA maps the data into the tangent space at the center
of mass and runs a classical eigendecomposition on basis coordinates.

Loops over data points accumulate in input order so results are
deterministic for fixed inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    MaxIterationsExceeded,
    TangentBasis,
    add_tangents,
    scale_tangent,
)

__all__ = [
    "MeanOptions",
    "MeanResult",
    "TpcaResult",
    "mean_cost",
    "mean_cost_gradient",
    "karcher_mean",
    "interpolation_mean",
    "variance",
    "tangent_pca",
]


@dataclass(frozen=True)
class MeanOptions:
    """Gradient descent settings for the center-of-mass solver."""

    tol: float = 1e-8
    max_iterations: int = 200
    initial_step: float = 1.0
    contraction: float = 0.5
    sufficient_decrease: float = 1e-4


@dataclass(frozen=True, eq=False)
class MeanResult:
    mean: object
    iterations: int
    final_grad_norm: float


@dataclass(frozen=True, eq=False)
class TpcaResult:
    """Principal directions of data in tangent coordinates at the mean.

    ``components`` is d x d with orthonormal columns (descending variance
    order, largest-magnitude entry of each column made positive);
    ``variances`` are the corresponding sample variances.
    """

    mean: object
    basis: TangentBasis
    components: np.ndarray
    variances: np.ndarray


def _checked_weights(points, weights):
    if len(points) == 0:
        raise ValueError("at least one data point is required")
    if weights is None:
        w = np.ones(len(points))
    else:
        w = np.asarray(weights, dtype=float)
        if w.shape != (len(points),):
            raise ValueError("weights must match the number of points")
        if np.any(w < 0.0):
            raise ValueError("weights must be nonnegative")
    total = float(np.sum(w))
    if total <= 0.0:
        raise ValueError("weights must not all be zero")
    return w, total


def mean_cost(manifold, points, q, weights=None):
    """Weighted mean squared geodesic distance from q to the data."""
    w, total = _checked_weights(points, weights)
    return sum(
        wk / total * float(manifold.distance(q, pk)) ** 2 for wk, pk in zip(w, points)
    )


def mean_cost_gradient(manifold, points, q, weights=None, *, out=None):
    """Riemannian gradient of mean_cost at q: -(2/W) sum w_k log_q p_k."""
    w, total = _checked_weights(points, weights)
    grad = None
    for wk, pk in zip(w, points):
        if wk == 0.0:
            continue
        term = manifold.log(q, pk)
        if grad is None:
            grad = scale_tangent(-2.0 * wk / total, term)
        else:
            grad = add_tangents(grad, term, alpha=-2.0 * wk / total)
    return manifold._finish(grad, out)


def karcher_mean(manifold, points, weights=None, options=MeanOptions()):
    """Center of mass by gradient descent with Armijo backtracking.

    Starts from the first data point and stops when the gradient norm falls
    below ``options.tol``. Raises MaxIterationsExceeded when the iteration or
    line-search budget runs out first, and LogUndefined if an iterate loses
    sight of a data point (e.g. becomes antipodal to it on the sphere).
    """
    w, _ = _checked_weights(points, weights)
    q = manifold.copy_point(points[0])
    for iteration in range(options.max_iterations + 1):
        grad = mean_cost_gradient(manifold, points, q, w)
        grad_norm = float(manifold.norm(q, grad))
        if grad_norm < options.tol:
            return MeanResult(mean=q, iterations=iteration, final_grad_norm=grad_norm)
        if iteration == options.max_iterations:
            break
        cost = mean_cost(manifold, points, q, w)
        # Search along the weighted log average, a positive rescaling of
        # -grad; at unit step this is the classic center-of-mass update,
        # which lands exactly on the flat-space mean.
        direction = scale_tangent(-0.5, grad)
        slope = float(manifold.inner(q, grad, direction))
        step = options.initial_step
        while True:
            candidate = manifold.exp(q, scale_tangent(step, direction))
            required = options.sufficient_decrease * step * slope
            if abs(required) < 8.0 * np.finfo(float).eps * cost:
                # the decrease test is below the cost's float resolution;
                # in this regime the unit log-average step is contractive
                q = candidate
                break
            if mean_cost(manifold, points, candidate, w) <= cost + required:
                q = candidate
                break
            step *= options.contraction
            if step < 1e-12:
                raise MaxIterationsExceeded(
                    f"line search stalled at gradient norm {grad_norm:.3e}"
                )
    raise MaxIterationsExceeded(
        f"no convergence within {options.max_iterations} iterations "
        f"(gradient norm {grad_norm:.3e})"
    )


def interpolation_mean(manifold, points, weights=None, *, out=None):
    """Running geodesic interpolation of the data, left to right.

    Exact on flat space; order dependent on curved manifolds. The running
    estimate moves toward each new point by its share of the accumulated
    weight.
    """
    w, _ = _checked_weights(points, weights)
    mean = manifold.copy_point(points[0])
    running = w[0]
    for wk, pk in zip(w[1:], points[1:]):
        if wk == 0.0:
            continue
        if running == 0.0:
            mean = manifold.copy_point(pk)
        else:
            mean = manifold.geodesic(mean, pk, wk / (running + wk))
        running += wk
    return manifold._finish(mean, out)


def variance(manifold, points, mean, weights=None):
    """Bias-corrected weighted variance about a supplied mean.

    Normalizes by W - sum(w^2)/W, which reduces to 1/(N-1) for equal
    weights; at least two points with positive total weight are required.
    """
    w, total = _checked_weights(points, weights)
    denom = total - float(np.sum(w * w)) / total
    if denom <= 0.0:
        raise ValueError("corrected variance needs weight on at least two points")
    return sum(
        wk / denom * float(manifold.distance(mean, pk)) ** 2
        for wk, pk in zip(w, points)
    )


def tangent_pca(manifold, points, options=MeanOptions()):
    """Principal component analysis in the tangent space at the Karcher mean.

    Computes the center of mass, maps every point through the log map,
    expresses the tangent vectors in the default orthonormal basis, and
    eigendecomposes the centered sample covariance (1/(N-1) normalization).
    """
    if len(points) < 2:
        raise ValueError("tangent PCA needs at least two data points")
    result = karcher_mean(manifold, points, options=options)
    mean = result.mean
    basis = manifold.default_basis(mean)
    coords = np.stack(
        [manifold.get_coordinates(mean, manifold.log(mean, pk), basis) for pk in points]
    )
    centered = coords - coords.mean(axis=0)
    cov = centered.T @ centered / (len(points) - 1)
    eigenvalues, eigenvectors = np.linalg.eigh(cov)
    variances = eigenvalues[::-1].copy()
    components = eigenvectors[:, ::-1].copy()
    for j in range(components.shape[1]):
        column = components[:, j]
        if column[int(np.argmax(np.abs(column)))] < 0.0:
            components[:, j] = -column
    return TpcaResult(mean=mean, basis=basis, components=components, variances=variances)
