"""Microbenchmark harness and command-line interface.

Protocol per (manifold, operation) pair: random operands are generated once
from the seeded source and validated, one small warmup run amortizes lazy
compilation, then the operation is executed 10^N times in a compiled loop,
with every result stored into a preallocated ring accumulator so the work
cannot be optimized away. N is the smallest power for which the measured
loop takes at least ``min_seconds`` of monotonic wall time; the same operands
are reused across all iterations of a loop. The statically-shaped manifolds
run nopython loops; the SPD power grid runs its vectorized operation in an
interpreted loop, where per-iteration overhead is negligible against the
operation cost.

Measurement is single threaded: BLAS pools are limited to one thread while
timing (via threadpoolctl when available) and the harness itself never
spawns workers.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .composite import PowerManifold
from .elementary import Euclidean, Sphere
from .matrix import Rotations, SymmetricPositiveDefinite

__all__ = [
    "MANIFOLD_IDS",
    "OP_IDS",
    "BenchConfig",
    "BenchRecord",
    "bench_inputs",
    "run_bench",
    "emit_csv",
    "main",
]

MANIFOLD_IDS = ("euclidean3", "so3", "spd3", "spd3_power_128x128", "sphere2")
OP_IDS = ("distance", "retract", "inverse_retract")

_POWER_RING = 4
_MAX_EXPONENT = 9


def _make_manifold(manifold_id):
    if manifold_id == "euclidean3":
        return Euclidean(3)
    if manifold_id == "so3":
        return Rotations(3)
    if manifold_id == "spd3":
        return SymmetricPositiveDefinite(3)
    if manifold_id == "spd3_power_128x128":
        return PowerManifold(SymmetricPositiveDefinite(3), (128, 128))
    if manifold_id == "sphere2":
        return Sphere(2)
    raise ValueError(f"unknown manifold id: {manifold_id!r}")


@dataclass(frozen=True)
class BenchConfig:
    """Selection of (manifold, op) pairs plus measurement settings."""

    manifolds: tuple = MANIFOLD_IDS
    ops: tuple = OP_IDS
    min_seconds: float = 1.0
    seed: int = 0

    def __post_init__(self):
        for m in self.manifolds:
            if m not in MANIFOLD_IDS:
                raise ValueError(f"unknown manifold id: {m!r}")
        for o in self.ops:
            if o not in OP_IDS:
                raise ValueError(f"unknown op id: {o!r}")
        if not self.manifolds or not self.ops:
            raise ValueError("at least one manifold and one op are required")
        if self.min_seconds <= 0.0:
            raise ValueError("min_seconds must be positive")
        if self.seed < 0:
            raise ValueError("seed must be a nonnegative integer")


@dataclass(frozen=True)
class BenchRecord:
    """One measurement: reps is a power of 10, per_op_us = total * 1e6 / reps."""

    manifold: str
    op: str
    reps: int
    total_seconds: float
    per_op_us: float


def bench_inputs(manifold_id, op, seed):
    """Deterministic operands for one (manifold, op) pair.

    Same seed, same arrays. Pairs for the inverse retraction are redrawn
    until they sit safely inside the invertibility domain.
    """
    manifold = _make_manifold(manifold_id)
    rng = np.random.default_rng(
        [seed, MANIFOLD_IDS.index(manifold_id), OP_IDS.index(op)]
    )
    p = manifold.rand_point(rng)
    if op == "retract":
        return manifold, (p, manifold.rand_tangent(p, rng))
    q = manifold.rand_point(rng)
    if op == "inverse_retract":
        while not _log_safe(manifold_id, p, q):
            q = manifold.rand_point(rng)
    return manifold, (p, q)


def _log_safe(manifold_id, p, q, margin=1e-3):
    if manifold_id == "sphere2":
        return float(np.dot(p, q)) > -1.0 + margin
    if manifold_id == "so3":
        w = p.T @ q
        cos_t = 0.5 * (np.trace(w) - 1.0)
        return cos_t > -1.0 + margin
    return True


def _validate_inputs(manifold, op, operands):
    p = operands[0]
    if not manifold.is_point(p):
        raise RuntimeError("generated base point failed validation")
    if op == "retract":
        if not manifold.is_tangent(p, operands[1]):
            raise RuntimeError("generated tangent failed validation")
    elif not manifold.is_point(operands[1]):
        raise RuntimeError("generated target point failed validation")


def _build_runner(manifold_id, op, manifold, operands):
    """Return runner(reps) -> elapsed wall seconds for the measured loop."""
    from . import _fast

    key = (manifold_id, op)
    if key in _fast.KERNELS:
        kind, kernel = _fast.KERNELS[key]
        a, b = operands
        if kind == "scalar":
            loop = _fast.make_scalar_loop(kernel)
            acc = np.empty(_fast.RING)
        else:
            loop = _fast.make_inplace_loop(kernel)
            acc = np.empty((_fast.RING,) + manifold.point_shape)

        def runner(reps):
            start = time.perf_counter()
            loop(reps, acc, a, b)
            return time.perf_counter() - start

        return runner

    # power manifold: vectorized library call per iteration
    a, b = operands
    if op == "distance":
        acc = np.empty(_fast.RING)
        distance = manifold.distance

        def runner(reps):
            mask = acc.shape[0] - 1
            start = time.perf_counter()
            for i in range(reps):
                acc[i & mask] = distance(a, b)
            return time.perf_counter() - start

        return runner

    bufs = [np.empty(manifold.point_shape) for _ in range(_POWER_RING)]
    call = manifold.exp if op == "retract" else manifold.log

    def runner(reps):
        mask = len(bufs) - 1
        start = time.perf_counter()
        for i in range(reps):
            call(a, b, out=bufs[i & mask])
        return time.perf_counter() - start

    return runner


def _measure_pair(manifold_id, op, min_seconds, seed):
    manifold, operands = bench_inputs(manifold_id, op, seed)
    _validate_inputs(manifold, op, operands)
    runner = _build_runner(manifold_id, op, manifold, operands)
    runner(10)  # warmup: compile and touch the accumulator
    total = 0.0
    reps = 10
    for exponent in range(1, _MAX_EXPONENT + 1):
        reps = 10**exponent
        total = runner(reps)
        if total >= min_seconds:
            break
    return BenchRecord(
        manifold=manifold_id,
        op=op,
        reps=reps,
        total_seconds=total,
        per_op_us=total * 1e6 / reps,
    )


def run_bench(cfg):
    """Measure every selected (manifold, op) pair; see the module docstring."""
    try:
        from threadpoolctl import threadpool_limits
    except ImportError:
        from contextlib import nullcontext

        def threadpool_limits(limits):
            return nullcontext()

    records = []
    with threadpool_limits(limits=1):
        for manifold_id in cfg.manifolds:
            for op in cfg.ops:
                records.append(_measure_pair(manifold_id, op, cfg.min_seconds, cfg.seed))
    return records


def emit_csv(records):
    """Render records as CSV; floats use repr so parsing them back is exact."""
    lines = ["manifold,op,reps,total_seconds,per_op_us"]
    for r in records:
        lines.append(f"{r.manifold},{r.op},{r.reps},{r.total_seconds!r},{r.per_op_us!r}")
    return "\n".join(lines) + "\n"


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="riemgeo-bench",
        description="Time distance/retraction/inverse-retraction kernels and emit CSV.",
    )
    parser.add_argument(
        "--manifolds",
        default=",".join(MANIFOLD_IDS),
        help=f"comma-separated subset of {{{','.join(MANIFOLD_IDS)}}}",
    )
    parser.add_argument(
        "--ops",
        default=",".join(OP_IDS),
        help=f"comma-separated subset of {{{','.join(OP_IDS)}}}",
    )
    parser.add_argument("--min-seconds", type=float, default=1.0)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", default="-", help="output path, or - for stdout")
    parser.add_argument("--threads", type=int, default=1, help="must be 1")
    args = parser.parse_args(argv)
    try:
        if args.threads != 1:
            raise ValueError("only --threads 1 is supported")
        cfg = BenchConfig(
            manifolds=tuple(s for s in args.manifolds.split(",") if s),
            ops=tuple(s for s in args.ops.split(",") if s),
            min_seconds=args.min_seconds,
            seed=args.seed,
        )
        text = emit_csv(run_bench(cfg))
        if args.out == "-":
            sys.stdout.write(text)
        else:
            Path(args.out).write_text(text)
    except Exception as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
