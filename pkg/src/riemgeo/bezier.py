"""Bezier curves on manifolds via recursive geodesic interpolation.

Each recursion level replaces consecutive control points by the geodesic
point at parameter t between them, contracting a scratch list of n points in
place; degree-1 evaluation is exactly one geodesic evaluation. On flat space
this reduces to the classical line-segment recursion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import Manifold

__all__ = ["BezierCurve", "bezier_point"]


def bezier_point(manifold, control_points, t, *, out=None):
    """Evaluate the Bezier curve with the given control points at t in [0, 1].

    Requires at least two control points, consecutively joined by unique
    minimizing geodesics at every recursion level; a LogUndefined from any
    geodesic evaluation propagates to the caller.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError("curve parameter must lie in [0, 1]")
    if len(control_points) < 2:
        raise ValueError("a Bezier curve needs at least two control points")
    pts = [manifold.copy_point(p) for p in control_points]
    for level in range(len(pts) - 1, 0, -1):
        for i in range(level):
            pts[i] = manifold.geodesic(pts[i], pts[i + 1], t)
    return manifold._finish(pts[0], out)


@dataclass(frozen=True, eq=False)
class BezierCurve:
    """A manifold together with an ordered tuple of control points.

    The curve starts at the first control point (t=0) and ends at the last
    (t=1); its degree is one less than the number of control points.
    """

    manifold: Manifold
    control_points: tuple

    def __post_init__(self):
        if len(self.control_points) < 2:
            raise ValueError("a Bezier curve needs at least two control points")

    @property
    def degree(self):
        return len(self.control_points) - 1

    def evaluate(self, t, *, out=None):
        return bezier_point(self.manifold, self.control_points, t, out=out)
