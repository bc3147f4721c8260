"""Disk-orbit computations: best disk coefficients, witness searches, density
probes, transitivity witnesses and orbit-growth monitoring."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .core import (
    Number,
    ShiftOperator,
    SparseVector,
    apply,
    apply_power,
    right_inverse,
)

_DISK_SLACK = 1e-12


class DegenerateOperatorError(ValueError):
    pass


@dataclass(frozen=True)
class DiskCoefficient:
    """Complex number in the closed unit disk.

    Values up to ``1 + 1e-12`` in modulus are pulled back onto the circle;
    anything larger is rejected.
    """

    value: complex

    def __post_init__(self):
        z = complex(self.value)
        r = abs(z)
        if r > 1 + _DISK_SLACK:
            raise ValueError(f"|alpha| = {r} exceeds 1")
        if r > 1:
            z = z / r
        object.__setattr__(self, "value", z)

    def __complex__(self) -> complex:
        return self.value

    def __abs__(self) -> float:
        return abs(self.value)


@dataclass(frozen=True)
class ApproxWitness:
    n: int
    alpha: DiskCoefficient
    residual: float


@dataclass(frozen=True)
class NotFound:
    """Search failed; ``best`` is the closest disk-orbit point seen."""

    best: ApproxWitness

    @property
    def residual(self) -> float:
        return self.best.residual


@dataclass(frozen=True)
class DensityReport:
    targets_total: int
    targets_hit: int
    worst_residual: float
    per_target: Tuple[Tuple[int, ApproxWitness], ...]
    tolerance: float


@dataclass(frozen=True)
class TransitivityWitness:
    z: SparseVector
    n: int
    alpha: DiskCoefficient
    input_residual: float
    output_residual: float


def optimal_disk_coefficient(v: SparseVector, y: SparseVector) -> Tuple[DiskCoefficient, float]:
    """Minimise ``||alpha v - y||`` over ``|alpha| <= 1``.

    The objective is a convex quadratic in ``alpha``; its unconstrained
    minimiser ``<y, v>/||v||^2`` is clamped radially onto the disk.
    """
    vv = v.norm()
    if vv == 0:
        return DiskCoefficient(0j), y.norm()
    alpha = y.inner(v) / vv / vv
    r = abs(alpha)
    if r > 1:
        alpha /= r
    coef = DiskCoefficient(alpha)
    return coef, (coef.value * v - y).norm()


def _orbit(op: ShiftOperator, x: SparseVector, horizon: int):
    v = x
    yield 0, v
    for n in range(1, horizon + 1):
        v = apply(op, v)
        yield n, v


def witness_search(
    op: ShiftOperator, x: SparseVector, y: SparseVector, horizon: int, tol: float
) -> Union[ApproxWitness, NotFound]:
    """First ``n <= horizon`` whose best disk multiple of ``T^n x`` is within ``tol`` of ``y``."""
    if not tol > 0:
        raise ValueError("tol must be positive")
    op.check_vector(x)
    op.check_vector(y)
    best = None
    for n, v in _orbit(op, x, horizon):
        alpha, res = optimal_disk_coefficient(v, y)
        w = ApproxWitness(n, alpha, res)
        if res <= tol:
            return w
        if best is None or res < best.residual:
            best = w
    return NotFound(best)


def density_probe(
    op: ShiftOperator,
    x: SparseVector,
    targets: Sequence[SparseVector],
    horizon: int,
    tol: float,
) -> DensityReport:
    if not targets:
        raise ValueError("density probe needs at least one target")
    per_target = []
    hits = 0
    for tid, y in enumerate(targets):
        found = witness_search(op, x, y, horizon, tol)
        if isinstance(found, ApproxWitness):
            hits += 1
            per_target.append((tid, found))
        else:
            per_target.append((tid, found.best))
    worst = max(w.residual for _, w in per_target)
    return DensityReport(len(targets), hits, worst, tuple(per_target), tol)


def complex_grid(lo: float, hi: float, steps: int) -> List[SparseVector]:
    """``steps x steps`` grid of points of C (stored at index 0), row-major in the imaginary part."""
    if steps < 1:
        raise ValueError("grid needs at least one step")
    if steps == 1:
        axis = [lo]
    else:
        axis = [lo + (hi - lo) * i / (steps - 1) for i in range(steps)]
    return [SparseVector.scalar(complex(re, im)) for im in axis for re in axis]


def transitivity_trajectory(
    op: ShiftOperator, x: SparseVector, y: SparseVector, horizon: int
) -> List[TransitivityWitness]:
    """Balanced transitivity candidates for ``n = 0, ..., horizon``.

    With ``S`` a right inverse, ``z_n = x + S^n y / alpha_n`` satisfies
    ``alpha_n T^n z_n = alpha_n T^n x + y``.  Choosing
    ``alpha_n = min(1, sqrt(||S^n y|| / ||T^n x||))`` equalises the input
    error ``||S^n y|| / alpha_n`` and output error ``alpha_n ||T^n x||``
    whenever the clamp is inactive.
    """
    s = right_inverse(op)
    op.check_vector(x)
    op.check_vector(y)
    out = []
    tx, sy = x, y
    for n in range(horizon + 1):
        if n:
            tx = apply(op, tx)
            sy = apply(s, sy)
        t_norm, s_norm = tx.norm(), sy.norm()
        alpha = 1.0 if t_norm == 0 else min(1.0, math.sqrt(s_norm / t_norm))
        if alpha == 0:
            # S^n y vanished: z = x already works with alpha = 1
            alpha = 1.0
        z = x + sy * (1 / alpha)
        out.append(TransitivityWitness(z, n, DiskCoefficient(alpha), s_norm / alpha, alpha * t_norm))
    return out


def transitivity_witness(
    op: ShiftOperator, x: SparseVector, y: SparseVector, horizon: int
) -> TransitivityWitness:
    """Candidate minimising ``max(input_residual, output_residual)``; ties go to the smallest ``n``."""
    traj = transitivity_trajectory(op, x, y, horizon)
    return min(traj, key=lambda w: (max(w.input_residual, w.output_residual), w.n))


class Closure(str, Enum):
    UNIT_DISK = "UnitDisk"
    WHOLE_PLANE = "WholePlane"


def scalar_orbit_closure(lam: Number) -> Closure:
    """Closure of ``{alpha lam^n : |alpha| <= 1, n >= 0}`` (disk orbit of 1)."""
    lam = complex(lam)
    if lam == 0:
        raise DegenerateOperatorError("zero scalar operator")
    return Closure.WHOLE_PLANE if abs(lam) > 1 else Closure.UNIT_DISK


def membership_residual(lam: Number, z: Number) -> float:
    """Distance from ``z`` to the closed disk orbit of 1 under ``x -> lam x``."""
    if scalar_orbit_closure(lam) is Closure.WHOLE_PLANE:
        return 0.0
    return max(0.0, abs(complex(z)) - 1.0)


def orbit_sup_monitor(op: ShiftOperator, x: SparseVector, horizon: int) -> Tuple[float, int]:
    """``max_{n <= horizon} ||T^n x||`` and the first ``n`` attaining it.

    A diskcyclic vector needs an unbounded orbit, so a bounded sup refutes
    the candidate ``x``.
    """
    best, arg = -1.0, 0
    for n, v in _orbit(op, x, horizon):
        r = v.norm()
        if r > best:
            best, arg = r, n
    return best, arg
