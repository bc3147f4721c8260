"""Weight-product criteria for diskcyclicity of weighted shifts.

Every limit below is asymptotic; at a finite horizon ``N`` it is replaced by
record tracking on a trajectory of log-quantities ``v_1, ..., v_N``:

* ``limsup v = +inf`` is *reached* when the running maximum sets a new record
  inside the trailing window (last ``trend_fraction * N`` steps) and that
  record exceeds ``tau_big``.  The witness sequence is the set of record
  indices whose value exceeds ``tau_big``.
* a quantity that must go to ``-inf`` along some subsequence is *refuted*
  when it stays above ``+tau_big`` and is nondecreasing across the trailing
  window, or when it is constant there.

A verdict is decisive only when one side has evidence and the other does
not, so raising ``tau_big`` can only move a decisive verdict to
``Inconclusive``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Optional, Tuple

import numpy as np

from .core import (
    DomainError,
    ShiftOperator,
    SparseVector,
    WeightSequence,
    apply,
    apply_power,
    right_inverse,
)

# relative slack when deciding whether a record is new or a window is flat
_RECORD_TOL = 1e-9
_STEP_TOL = 1e-12


class Outcome(str, Enum):
    DISKCYCLIC = "Diskcyclic"
    NOT_DISKCYCLIC = "NotDiskcyclic"
    INCONCLUSIVE = "Inconclusive"


class ProbeOutcome(str, Enum):
    POSITIVE = "positive"
    NEGATIVE = "negative"
    INCONCLUSIVE = "Inconclusive"


class Direction(str, Enum):
    FORWARD = "forward"
    BACKWARD = "backward"


class HypothesisNotMet(ValueError):
    """A corollary was invoked outside its hypothesis."""


@dataclass(frozen=True)
class CriterionConfig:
    horizon: int = 200
    qmax: int = 8
    tau_big: float = 30.0
    trend_fraction: float = 0.25

    def __post_init__(self):
        if self.qmax < 0:
            raise ValueError("qmax must be nonnegative")
        if self.horizon < max(4 * self.qmax, 4):
            raise ValueError("horizon must be at least 4*qmax (and at least 4)")
        if not self.tau_big > 0:
            raise ValueError("tau_big must be positive")
        if not 0 < self.trend_fraction < 1:
            raise ValueError("trend_fraction must lie in (0, 1)")

    @property
    def window_start(self) -> int:
        """First index ``n`` of the trailing trend window."""
        return trailing_start(self.horizon, self.trend_fraction)


@dataclass(frozen=True)
class Verdict:
    """Outcome of one criterion.

    ``evidence`` holds ``(n, q, log_value)`` triples: the witness points for a
    positive outcome, the violating window for a negative one.  Raw
    trajectories (index ``n-1`` holds step ``n``) are kept for inspection.
    """

    outcome: object  # Outcome for theorem-grade checks, ProbeOutcome for probes
    reason: str
    evidence: Tuple[Tuple[int, int, float], ...] = ()
    witness_sequence: Tuple[int, ...] = ()
    trajectories: Dict[str, Tuple[float, ...]] = field(default_factory=dict)
    grade: str = "theorem"
    negative_evidence: bool = False

    @property
    def witness_range(self) -> Optional[Tuple[int, int]]:
        if not self.witness_sequence:
            return None
        return self.witness_sequence[0], self.witness_sequence[-1]


# ---------------------------------------------------------------------------
# finite-horizon limit detection
# ---------------------------------------------------------------------------


def trailing_start(horizon: int, fraction: float) -> int:
    width = max(1, math.ceil(fraction * horizon))
    return max(2, horizon - width + 1)


def _tol(x: float) -> float:
    return _RECORD_TOL * (1.0 + abs(x))


def record_indices(values, tau: float) -> Tuple[int, ...]:
    """1-based indices where ``values`` beats its previous maximum and exceeds ``tau``."""
    out = []
    best = -math.inf
    for n, v in enumerate(values, start=1):
        if v > best + (_tol(best) if math.isfinite(best) else 0.0):
            best = v
            if v > tau:
                out.append(n)
    return tuple(out)


def reaches_infinity(values, tau: float, start: int) -> bool:
    """New running-max record in the trailing window, above ``tau``."""
    v = np.asarray(values, dtype=float)
    prior, window = v[: start - 1], v[start - 1:]
    if window.size == 0 or prior.size == 0:
        return False
    top = window.max()
    return bool(top > tau and top > prior.max() + _tol(prior.max()))


def stalled(values, start: int) -> bool:
    """No new running-max record inside the trailing window."""
    v = np.asarray(values, dtype=float)
    prior, window = v[: start - 1], v[start - 1:]
    return bool(window.max() <= prior.max() + _tol(prior.max()))


def diverges_throughout(values, tau: float, start: int) -> bool:
    """Above ``tau`` at every step of the trailing window and nondecreasing there."""
    w = np.asarray(values, dtype=float)[start - 1:]
    if not np.all(w > tau):
        return False
    steps = np.diff(w)
    return bool(np.all(steps >= -_STEP_TOL * (1.0 + np.abs(w[:-1]))))


def is_flat(values, start: int) -> bool:
    w = np.asarray(values, dtype=float)[start - 1:]
    return bool(w.max() - w.min() <= _tol(float(np.abs(w).max())))


def refutes_decay(values, tau: float, start: int) -> bool:
    """Evidence that ``values`` cannot tend to ``-inf`` along any subsequence."""
    return diverges_throughout(values, tau, start) or is_flat(values, start)


def _decide(positive: bool, negative: bool, yes, no, unsure):
    if positive and not negative:
        return yes
    if negative and not positive:
        return no
    return unsure


# ---------------------------------------------------------------------------
# window products
# ---------------------------------------------------------------------------


def log_window_product(ws: WeightSequence, j: int, n: int) -> float:
    """``sum_{k=j}^{j+n-1} log|w_k|`` computed in closed form across the tails."""
    if n < 0:
        raise ValueError("window length must be nonnegative")
    if ws.one_sided and n > 0 and j < 0:
        raise DomainError(f"window starting at {j} leaves the one-sided domain")
    return ws.log_sum(j, n)


def _require_two_sided(ws: WeightSequence) -> None:
    if ws.one_sided:
        raise DomainError("bilateral criteria need a two-sided weight sequence")


def _one_sided_products(ws: WeightSequence, direction: Direction, horizon: int):
    """Partial log-products on the expanding and contracting side.

    Forward shifts: ``P_n = log prod_{k=1}^n |w_k|`` and
    ``M_n = log prod_{k=1}^n |w_{-k}|``.  Backward shifts swap the roles of
    the two sides, which is the reflection ``w_n -> w_{-n}``.
    """
    n = np.arange(1, horizon + 1)
    right = ws.log_sum(np.ones_like(n), n)
    left = ws.log_sum(-n, n)
    if Direction(direction) is Direction.FORWARD:
        return right, left
    return left, right


def _necessary_quantities(ws: WeightSequence, direction: Direction, horizon: int):
    """The two products that must jointly tend to zero for a diskcyclic shift.

    Returns ``(c1, c2)`` in log form: ``c1 = -M_n`` (product of reciprocal
    contracting-side weights) and ``c2 = P_n + c1``.
    """
    expand, contract = _one_sided_products(ws, direction, horizon)
    c1 = -contract
    return c1, expand + c1


def _window_margins(ws: WeightSequence, direction: Direction, cfg: CriterionConfig):
    """Per-q trajectories of the two-condition window criterion.

    ``a[q, n-1]`` is the min over ``|h| <= q`` of the denominator window and
    ``b[q, n-1]`` the max over ``|h|, |j| <= q`` of numerator minus
    denominator.  Forward windows are ``[h-n, h-1]`` (denominator) and
    ``[j, j+n-1]`` (numerator); backward ones are ``[h+1, h+n]`` and
    ``[j+1-n, j]``.
    """
    q = cfg.qmax
    n = np.arange(1, cfg.horizon + 1)[None, :]
    h = np.arange(-q, q + 1)[:, None]
    if Direction(direction) is Direction.FORWARD:
        den = ws.log_sum(h - n, n)
        num = ws.log_sum(h, n)
    else:
        den = ws.log_sum(h + 1, n)
        num = ws.log_sum(h + 1 - n, n)
    a = np.empty((q + 1, cfg.horizon))
    top = np.empty((q + 1, cfg.horizon))
    for qq in range(q + 1):
        rows = slice(q - qq, q + qq + 1)
        a[qq] = den[rows].min(axis=0)
        top[qq] = num[rows].max(axis=0)
    return a, top - a


def _as_tuple(v) -> Tuple[float, ...]:
    return tuple(float(x) for x in v)


def _window_evidence(values, start: int, q: int) -> Tuple[Tuple[int, int, float], ...]:
    return tuple((n, q, float(values[n - 1])) for n in range(start, len(values) + 1))


# ---------------------------------------------------------------------------
# verdicts
# ---------------------------------------------------------------------------


def _bilateral_verdict(ws: WeightSequence, direction: Direction, cfg: CriterionConfig) -> Verdict:
    _require_two_sided(ws)
    start = cfg.window_start
    a, b = _window_margins(ws, direction, cfg)
    # the joint margin is monotone in q, so the q = qmax row binds
    margin = np.minimum(a, -b).min(axis=0)
    c1, c2 = _necessary_quantities(ws, direction, cfg.horizon)
    needed = np.maximum(c1, c2)

    positive = reaches_infinity(margin, cfg.tau_big, start)
    negative = refutes_decay(c1, cfg.tau_big, start) or refutes_decay(c2, cfg.tau_big, start)
    outcome = _decide(positive, negative, Outcome.DISKCYCLIC, Outcome.NOT_DISKCYCLIC, Outcome.INCONCLUSIVE)
    trajectories = {
        "denominator_min": _as_tuple(a[-1]),
        "ratio_max": _as_tuple(b[-1]),
        "margin": _as_tuple(margin),
        "necessary_c1": _as_tuple(c1),
        "necessary_c2": _as_tuple(c2),
    }
    if outcome is Outcome.DISKCYCLIC:
        witness = record_indices(margin, cfg.tau_big)
        evidence = tuple((n, cfg.qmax, float(margin[n - 1])) for n in witness)
        return Verdict(outcome, "window-product-criterion", evidence, witness, trajectories)
    if outcome is Outcome.NOT_DISKCYCLIC:
        bad = c1 if refutes_decay(c1, cfg.tau_big, start) else c2
        return Verdict(outcome, "necessary-product-condition", _window_evidence(bad, start, 0), (), trajectories)
    return Verdict(outcome, "undecided", (), (), trajectories, negative_evidence=stalled(-needed, start))


def forward_bilateral_verdict(ws: WeightSequence, cfg: CriterionConfig = CriterionConfig()) -> Verdict:
    """Classify the bilateral forward shift ``e_n -> w_n e_{n+1}``.

    Diskcyclic when, for every ``q <= qmax``, one increasing run of ``n``
    makes the denominator windows large and the numerator/denominator ratio
    small.  Not diskcyclic when the ``q = 0`` necessary products diverge.
    """
    return _bilateral_verdict(ws, Direction.FORWARD, cfg)


def backward_bilateral_verdict(ws: WeightSequence, cfg: CriterionConfig = CriterionConfig()) -> Verdict:
    """Mirror of :func:`forward_bilateral_verdict` for ``e_n -> w_n e_{n-1}``."""
    return _bilateral_verdict(ws, Direction.BACKWARD, cfg)


def bilateral_verdict(ws: WeightSequence, direction, cfg: CriterionConfig = CriterionConfig()) -> Verdict:
    return _bilateral_verdict(ws, Direction(direction), cfg)


def bounded_below_joint_search(ws: WeightSequence, direction, cfg: CriterionConfig = CriterionConfig()) -> Verdict:
    """Search one increasing sequence along which both corollary products vanish.

    The corollary needs the weights on one side of zero bounded away from
    zero.  Its two products are ``prod 1/w`` over the contracting side and
    that times ``prod w`` over the expanding side; the scan tracks
    ``min(-log c1, -log c2)`` and takes its record indices as ``n_r``.
    """
    _require_two_sided(ws)
    direction = Direction(direction)
    neg_side = [abs(ws.neg_tail)] + [abs(w) for k, w in ws.table if k < 0]
    pos_side = [abs(ws.pos_tail)] + [abs(w) for k, w in ws.table if k > 0]
    if not (min(neg_side) > 0 or min(pos_side) > 0):
        raise HypothesisNotMet("weights are not bounded below on either side")

    start = cfg.window_start
    c1, c2 = _necessary_quantities(ws, direction, cfg.horizon)
    needed = np.maximum(c1, c2)
    positive = reaches_infinity(-needed, cfg.tau_big, start)
    negative = refutes_decay(c1, cfg.tau_big, start) or refutes_decay(c2, cfg.tau_big, start)
    outcome = _decide(positive, negative, Outcome.DISKCYCLIC, Outcome.NOT_DISKCYCLIC, Outcome.INCONCLUSIVE)
    trajectories = {"c1": _as_tuple(c1), "c2": _as_tuple(c2)}
    if outcome is Outcome.DISKCYCLIC:
        witness = record_indices(-needed, cfg.tau_big)
        evidence = tuple((n, 0, float(needed[n - 1])) for n in witness)
        return Verdict(outcome, "joint-product-criterion", evidence, witness, trajectories)
    if outcome is Outcome.NOT_DISKCYCLIC:
        bad = c1 if refutes_decay(c1, cfg.tau_big, start) else c2
        return Verdict(outcome, "joint-product-criterion", _window_evidence(bad, start, 0), (), trajectories)
    return Verdict(outcome, "undecided", (), (), trajectories, negative_evidence=stalled(-needed, start))


def unilateral_backward_verdict(ws: WeightSequence, cfg: CriterionConfig = CriterionConfig()) -> Verdict:
    """Diskcyclic iff ``limsup_n |w_1 ... w_n| = inf`` for ``e_n -> w_n e_{n-1}`` on ``n >= 0``."""
    if not ws.one_sided:
        raise DomainError("unilateral criterion needs a one-sided weight sequence")
    start = cfg.window_start
    n = np.arange(1, cfg.horizon + 1)
    partial = ws.log_sum(np.ones_like(n), n)
    positive = reaches_infinity(partial, cfg.tau_big, start)
    negative = stalled(partial, start)
    outcome = _decide(positive, negative, Outcome.DISKCYCLIC, Outcome.NOT_DISKCYCLIC, Outcome.INCONCLUSIVE)
    trajectories = {"partial_product": _as_tuple(partial)}
    if outcome is Outcome.DISKCYCLIC:
        witness = record_indices(partial, cfg.tau_big)
        evidence = tuple((k, 0, float(partial[k - 1])) for k in witness)
        return Verdict(outcome, "unilateral-partial-product", evidence, witness, trajectories)
    if outcome is Outcome.NOT_DISKCYCLIC:
        return Verdict(outcome, "unilateral-partial-product", _window_evidence(partial, start, 0), (), trajectories)
    return Verdict(outcome, "undecided", (), (), trajectories)


def supercyclicity_probe(ws: WeightSequence, direction, cfg: CriterionConfig = CriterionConfig()) -> Verdict:
    """Ratio condition alone: ``(prod w_k)(prod 1/w_{-k}) -> 0`` along some run."""
    _require_two_sided(ws)
    start = cfg.window_start
    _, c2 = _necessary_quantities(ws, Direction(direction), cfg.horizon)
    positive = reaches_infinity(-c2, cfg.tau_big, start)
    negative = refutes_decay(c2, cfg.tau_big, start)
    outcome = _decide(positive, negative, ProbeOutcome.POSITIVE, ProbeOutcome.NEGATIVE, ProbeOutcome.INCONCLUSIVE)
    witness = record_indices(-c2, cfg.tau_big) if outcome is ProbeOutcome.POSITIVE else ()
    evidence = tuple((n, 0, float(c2[n - 1])) for n in witness)
    if outcome is ProbeOutcome.NEGATIVE:
        evidence = _window_evidence(c2, start, 0)
    return Verdict(outcome, "supercyclic-ratio-probe", evidence, witness, {"ratio": _as_tuple(c2)}, grade="probe")


def hypercyclicity_probe(ws: WeightSequence, direction, cfg: CriterionConfig = CriterionConfig()) -> Verdict:
    """Negative when the expanding-side product diverges along every tail;
    positive when both one-sided products vanish along a common run."""
    _require_two_sided(ws)
    start = cfg.window_start
    expand, contract = _one_sided_products(ws, Direction(direction), cfg.horizon)
    margin = np.minimum(-expand, contract)
    positive = reaches_infinity(margin, cfg.tau_big, start)
    negative = diverges_throughout(expand, cfg.tau_big, start)
    outcome = _decide(positive, negative, ProbeOutcome.POSITIVE, ProbeOutcome.NEGATIVE, ProbeOutcome.INCONCLUSIVE)
    trajectories = {"expanding_product": _as_tuple(expand), "contracting_product": _as_tuple(contract)}
    if outcome is ProbeOutcome.POSITIVE:
        witness = record_indices(margin, cfg.tau_big)
        evidence = tuple((n, 0, float(margin[n - 1])) for n in witness)
        return Verdict(outcome, "hypercyclic-product-probe", evidence, witness, trajectories, grade="probe")
    evidence = _window_evidence(expand, start, 0) if outcome is ProbeOutcome.NEGATIVE else ()
    return Verdict(outcome, "hypercyclic-product-probe", evidence, (), trajectories, grade="probe")


# ---------------------------------------------------------------------------
# second criterion certificate
# ---------------------------------------------------------------------------

CERTIFICATE_TOL = 1e-6
RECONSTRUCTION_TOL = 1e-10


@dataclass(frozen=True)
class Certificate:
    """Constructive check of the second criterion with ``n_k = k``.

    For each ``y = e_j`` the approximants are ``x_k = S^k y``.  Trajectories
    are keyed by ``j`` (``norms``) and ``(i, j)`` (``products``, holding
    ``||T^k e_i|| * ||x_k||``).  Tails are the maxima over the trailing window.
    """

    passed: bool
    y_set: Tuple[int, ...]
    x_set: Tuple[int, ...]
    n_k: Tuple[int, ...]
    norms: Dict[int, Tuple[float, ...]]
    products: Dict[Tuple[int, int], Tuple[float, ...]]
    norm_tail: float
    product_tail: float
    reconstruction_error: float
    tolerance: float = CERTIFICATE_TOL


def second_criterion_certificate(
    op: ShiftOperator, basis_radius: int = 2, cfg: CriterionConfig = CriterionConfig()
) -> Certificate:
    s = right_inverse(op)  # raises when T is not surjective
    horizon = cfg.horizon
    start = cfg.window_start
    indices = tuple(i for i in range(-basis_radius, basis_radius + 1) if op.in_domain(i))

    orbit_norms = {}
    for i in indices:
        t = SparseVector.basis(i)
        row = []
        for _ in range(horizon):
            t = apply(op, t)
            row.append(t.norm())
        orbit_norms[i] = row

    norms, products = {}, {}
    worst_rebuild = 0.0
    for j in indices:
        y = SparseVector.basis(j)
        x = y
        row = []
        for k in range(1, horizon + 1):
            x = apply(s, x)
            row.append(x.norm())
            err = (apply_power(op, x, k) - y).norm()
            worst_rebuild = max(worst_rebuild, err)
        norms[j] = tuple(row)
        for i in indices:
            products[(i, j)] = tuple(a * b for a, b in zip(orbit_norms[i], row))

    norm_tail = max(max(r[start - 1:]) for r in norms.values())
    product_tail = max(max(r[start - 1:]) for r in products.values())
    passed = (
        worst_rebuild <= RECONSTRUCTION_TOL
        and norm_tail < CERTIFICATE_TOL
        and product_tail < CERTIFICATE_TOL
    )
    return Certificate(
        passed, indices, indices, tuple(range(1, horizon + 1)), norms, products,
        norm_tail, product_tail, worst_rebuild,
    )
