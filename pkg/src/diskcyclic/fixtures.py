"""Registry of worked examples reproduced as checked fixtures.

Each fixture pairs an operator with the outcomes its example establishes.
``run_fixture`` recomputes every outcome and compares it with the expected
string.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, List, Tuple

from .analysis import classify
from .core import (
    ShiftOperator,
    Side,
    SparseVector,
    WeightSequence,
    adjoint,
    bilateral_backward,
    bilateral_forward,
    inverse,
    scalar,
    unilateral_backward,
)
from .criteria import (
    CriterionConfig,
    hypercyclicity_probe,
    second_criterion_certificate,
    supercyclicity_probe,
)
from .orbit import (
    ApproxWitness,
    complex_grid,
    density_probe,
    membership_residual,
    orbit_sup_monitor,
    scalar_orbit_closure,
    witness_search,
)
from .spectral import unit_disk_obstruction


@dataclass(frozen=True)
class RunConfig:
    horizon: int = 200
    qmax: int = 8
    tau_big: float = 30.0
    tolerance: float = 1e-6
    output_format: str = "text"

    def criterion_config(self) -> CriterionConfig:
        return CriterionConfig(self.horizon, self.qmax, self.tau_big)


@dataclass(frozen=True)
class Check:
    name: str
    expected: str
    compute: Callable[[RunConfig], str]
    source: str


@dataclass(frozen=True)
class FixtureEntry:
    id: str
    description: str
    operator: ShiftOperator
    checks: Tuple[Check, ...]


@dataclass(frozen=True)
class CheckResult:
    fixture: str
    check: str
    expected: str
    actual: str

    @property
    def passed(self) -> bool:
        return self.expected == self.actual


def two_tailed(neg, pos, table=None) -> WeightSequence:
    return WeightSequence(table or {}, neg, pos)


def one_sided(value) -> WeightSequence:
    return WeightSequence.constant(value, Side.ONE_SIDED)


EX_212 = bilateral_forward(two_tailed(3, 2))
EX_SUPERCYCLIC = bilateral_forward(two_tailed(1 / 2, 1 / 3))
EX_2B = unilateral_backward(one_sided(2))
EX_AB1 = unilateral_backward(one_sided(1))
EX_BOTH = bilateral_forward(two_tailed(3, 1 / 2))
EX_SCALAR_2 = scalar(2)
EX_SCALAR_HALF = scalar(0.5)


def _outcome(op: ShiftOperator) -> Callable[[RunConfig], str]:
    return lambda rc: classify(op, rc.criterion_config()).outcome.value


def _probe(fn, op: ShiftOperator) -> Callable[[RunConfig], str]:
    direction = "forward" if op.is_forward else "backward"
    return lambda rc: fn(op.weights, direction, rc.criterion_config()).outcome.value


def _obstruction(op: ShiftOperator) -> Callable[[RunConfig], str]:
    return lambda rc: unit_disk_obstruction(op.weights, "forward", max(rc.horizon, 2)).value


def _certificate(op: ShiftOperator, radius: int, horizon: int = 60) -> Callable[[RunConfig], str]:
    def run(rc):
        cfg = CriterionConfig(horizon, min(rc.qmax, horizon // 4), rc.tau_big)
        return "PASS" if second_criterion_certificate(op, radius, cfg).passed else "FAIL"

    return run


def _same_weights(op: ShiftOperator, expected: WeightSequence) -> Callable[[RunConfig], str]:
    return lambda rc: "match" if op.weights == expected else f"differs: {op.weights}"


def _orbit_bound(op: ShiftOperator, x: SparseVector, bound: float) -> Callable[[RunConfig], str]:
    def run(rc):
        sup, _ = orbit_sup_monitor(op, x, rc.horizon)
        return f"sup<={bound:g}" if sup <= bound * (1 + 1e-12) else f"sup={sup!r}"

    return run


def _far_target_missed(op: ShiftOperator) -> Callable[[RunConfig], str]:
    def run(rc):
        found = witness_search(op, SparseVector.basis(0), SparseVector.basis(0, 3.0), rc.horizon, rc.tolerance)
        if isinstance(found, ApproxWitness):
            return f"hit at n={found.n}"
        return "residual>=2" if found.residual >= 2 - 1e-12 else f"residual={found.residual!r}"

    return run


def _grid_hits(op: ShiftOperator) -> Callable[[RunConfig], str]:
    def run(rc):
        grid = complex_grid(-10.0, 10.0, 11)
        report = density_probe(op, SparseVector.scalar(1), grid, rc.horizon, rc.tolerance)
        return f"{report.targets_hit}/{report.targets_total}"

    return run


def _scalar_witness(op: ShiftOperator, target: complex) -> Callable[[RunConfig], str]:
    def run(rc):
        found = witness_search(op, SparseVector.scalar(1), SparseVector.scalar(target), rc.horizon, rc.tolerance)
        if isinstance(found, ApproxWitness):
            return f"n={found.n}"
        return "not found"

    return run


def _residual_at(op: ShiftOperator, z: complex, expected: float) -> Callable[[RunConfig], str]:
    def run(rc):
        closed = membership_residual(op.lam, z)
        found = witness_search(op, SparseVector.scalar(1), SparseVector.scalar(z), rc.horizon, rc.tolerance)
        if abs(closed - expected) <= 1e-9 and abs(found.residual - expected) <= 1e-9:
            return f"{expected:g}"
        return f"closed-form={closed!r} search={found.residual!r}"

    return run


def _closure(op: ShiftOperator) -> Callable[[RunConfig], str]:
    return lambda rc: scalar_orbit_closure(op.lam).value


def _build() -> Dict[str, FixtureEntry]:
    adj = adjoint(EX_212)
    inv = inverse(EX_212)
    inv_both = inverse(EX_BOTH)
    fixtures = [
        FixtureEntry(
            "ex-2.12",
            "forward shift, weights 2 (n >= 0) and 3 (n < 0): diskcyclic but not hypercyclic",
            EX_212,
            (
                Check("diskcyclic", "Diskcyclic", _outcome(EX_212), "joint products (1/3)^n and (2/3)^n vanish"),
                Check("hypercyclic-probe", "negative", _probe(hypercyclicity_probe, EX_212), "prod w_k = 2^n diverges"),
                Check("supercyclic-probe", "positive", _probe(supercyclicity_probe, EX_212), "diskcyclic implies supercyclic"),
                Check("spectral-obstruction", "NotObstructed", _obstruction(EX_212), "annulus [2, 3]"),
            ),
        ),
        FixtureEntry(
            "ex-supercyclic",
            "forward shift, weights 1/3 (n >= 0) and 1/2 (n < 0): supercyclic but not diskcyclic",
            EX_SUPERCYCLIC,
            (
                Check("diskcyclic", "NotDiskcyclic", _outcome(EX_SUPERCYCLIC), "prod 1/w_{-k} = 2^n diverges"),
                Check("supercyclic-probe", "positive", _probe(supercyclicity_probe, EX_SUPERCYCLIC), "ratio (2/3)^n vanishes"),
            ),
        ),
        FixtureEntry(
            "ex-2B",
            "twice the unilateral backward shift",
            EX_2B,
            (
                Check("diskcyclic", "Diskcyclic", _outcome(EX_2B), "partial products 2^n are unbounded"),
                Check("second-criterion", "PASS", _certificate(EX_2B, 2), "x_k = (F/2)^k y"),
            ),
        ),
        FixtureEntry(
            "ex-aB-1",
            "unilateral backward shift with unit weights",
            EX_AB1,
            (
                Check("diskcyclic", "NotDiskcyclic", _outcome(EX_AB1), "disk orbits stay bounded"),
                Check(
                    "orbit-bound",
                    "sup<=1",
                    _orbit_bound(EX_AB1, SparseVector({0: 0.6, 3: 0.8j}), 1.0),
                    "||T^k e_n|| = |a|^k <= 1",
                ),
                Check("far-target", "residual>=2", _far_target_missed(EX_AB1), "3 e_0 lies outside the unit ball"),
                Check("second-criterion", "FAIL", _certificate(EX_AB1, 2), "||x_k|| = 1 for all k"),
            ),
        ),
        FixtureEntry(
            "ex-adjoint",
            "the ex-2.12 shift is diskcyclic but its adjoint is not",
            EX_212,
            (
                Check("forward", "Diskcyclic", _outcome(EX_212), "same operator as ex-2.12"),
                Check("adjoint-weights", "match", _same_weights(adj, two_tailed(3, 2, {0: 3})), "z_n = 2 (n > 0), 3 (n <= 0)"),
                Check("adjoint", "NotDiskcyclic", _outcome(adj), "ratio (3/2)^n diverges"),
            ),
        ),
        FixtureEntry(
            "ex-inverse",
            "the ex-2.12 shift is diskcyclic but its inverse is not",
            EX_212,
            (
                Check("forward", "Diskcyclic", _outcome(EX_212), "same operator as ex-2.12"),
                Check(
                    "inverse-weights", "match",
                    _same_weights(inv, two_tailed(1 / 3, 1 / 2, {0: 1 / 3})),
                    "z_n = 1/2 (n > 0), 1/3 (n <= 0)",
                ),
                Check("inverse", "NotDiskcyclic", _outcome(inv), "prod 1/z_k = 2^n diverges"),
            ),
        ),
        FixtureEntry(
            "ex-both-invertible",
            "forward shift, weights 1/2 (n >= 0) and 3 (n < 0): it and its inverse are diskcyclic",
            EX_BOTH,
            (
                Check("forward", "Diskcyclic", _outcome(EX_BOTH), "products 1/3^n and 1/6^n vanish"),
                Check(
                    "inverse-weights", "match",
                    _same_weights(inv_both, two_tailed(1 / 3, 2, {0: 1 / 3})),
                    "z_n = 2 (n > 0), 1/3 (n <= 0)",
                ),
                Check("inverse", "Diskcyclic", _outcome(inv_both), "products 1/2^n and 1/6^n vanish"),
            ),
        ),
        FixtureEntry(
            "ex-scalar-2",
            "x -> 2x on C is diskcyclic",
            EX_SCALAR_2,
            (
                Check("closure", "WholePlane", _closure(EX_SCALAR_2), "2^k eventually exceeds |z|"),
                Check("diskcyclic", "Diskcyclic", _outcome(EX_SCALAR_2), "disk orbit of 1 is C"),
                Check("grid-hits", "121/121", _grid_hits(EX_SCALAR_2), "11x11 grid on [-10, 10]^2"),
                Check("witness-7+3i", "n=3", _scalar_witness(EX_SCALAR_2, 7 + 3j), "2^3 = 8 >= |7 + 3i|"),
            ),
        ),
        FixtureEntry(
            "ex-scalar-half",
            "x -> x/2 on C: disk orbit of 1 is somewhere but not everywhere dense",
            EX_SCALAR_HALF,
            (
                Check("closure", "UnitDisk", _closure(EX_SCALAR_HALF), "disk orbit of 1 is the closed unit disk"),
                Check("diskcyclic", "NotDiskcyclic", _outcome(EX_SCALAR_HALF), "disk orbits are bounded"),
                Check("residual-at-1.5", "0.5", _residual_at(EX_SCALAR_HALF, 1.5, 0.5), "distance from 1.5 to the unit disk"),
                Check(
                    "inverse-of-scalar-2", "match",
                    lambda rc: "match" if inverse(EX_SCALAR_2) == EX_SCALAR_HALF else "differs",
                    "x -> 2x has inverse x -> x/2",
                ),
            ),
        ),
    ]
    return {f.id: f for f in fixtures}


FIXTURES: Dict[str, FixtureEntry] = _build()


def run_fixture(fixture_id: str, rc: RunConfig = RunConfig()) -> List[CheckResult]:
    try:
        fixture = FIXTURES[fixture_id]
    except KeyError:
        raise KeyError(f"unknown fixture {fixture_id!r}; known: {', '.join(FIXTURES)}") from None
    return [CheckResult(fixture.id, c.name, c.expected, c.compute(rc)) for c in fixture.checks]


def run_all(rc: RunConfig = RunConfig()) -> List[CheckResult]:
    out = []
    for fid in FIXTURES:
        out.extend(run_fixture(fid, rc))
    return out
