"""Combined classification of an operator from every applicable criterion."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Optional

from .core import Kind, ShiftOperator
from .criteria import (
    CriterionConfig,
    Direction,
    Outcome,
    Verdict,
    bilateral_verdict,
    bounded_below_joint_search,
    hypercyclicity_probe,
    supercyclicity_probe,
    unilateral_backward_verdict,
)
from .orbit import Closure, scalar_orbit_closure
from .spectral import AnnulusEstimate, Obstruction, annulus_estimate, unit_disk_obstruction


@dataclass(frozen=True)
class Classification:
    outcome: Outcome
    reason: str
    verdicts: Dict[str, Verdict] = field(default_factory=dict)
    probes: Dict[str, Verdict] = field(default_factory=dict)
    obstruction: Optional[Obstruction] = None
    annulus: Optional[AnnulusEstimate] = None
    closure: Optional[Closure] = None
    parts: tuple = ()

    @property
    def witness_sequence(self):
        for v in self.verdicts.values():
            if v.outcome is self.outcome and v.witness_sequence:
                return v.witness_sequence
        return ()


def _merge(verdicts) -> Outcome:
    decisive = {v.outcome for v in verdicts if v.outcome is not Outcome.INCONCLUSIVE}
    if len(decisive) == 1:
        return decisive.pop()
    return Outcome.INCONCLUSIVE


def classify(op: ShiftOperator, cfg: CriterionConfig = CriterionConfig()) -> Classification:
    """Run every criterion that applies to ``op`` and combine them.

    A spectral obstruction overrides the product criteria.  Theorem-grade
    verdicts that disagree leave the result inconclusive.
    """
    if op.kind is Kind.SCALAR:
        closure = scalar_orbit_closure(op.lam)
        outcome = Outcome.DISKCYCLIC if closure is Closure.WHOLE_PLANE else Outcome.NOT_DISKCYCLIC
        return Classification(outcome, "scalar-disk-orbit-closure", closure=closure)

    if op.kind is Kind.DIRECT_SUM:
        parts = tuple(classify(p, cfg) for p in op.parts)
        if any(p.outcome is Outcome.NOT_DISKCYCLIC for p in parts):
            return Classification(Outcome.NOT_DISKCYCLIC, "direct-sum-component", parts=parts)
        return Classification(Outcome.INCONCLUSIVE, "direct-sum-undecided", parts=parts)

    ws = op.weights
    if op.kind is Kind.UNILATERAL_BACKWARD:
        v = unilateral_backward_verdict(ws, cfg)
        return Classification(v.outcome, v.reason, {"unilateral": v})

    if op.kind is Kind.UNILATERAL_FORWARD:
        return Classification(Outcome.INCONCLUSIVE, "no-criterion-for-operator-class")

    direction = Direction.FORWARD if op.kind is Kind.BILATERAL_FORWARD else Direction.BACKWARD
    verdicts = {
        "window": bilateral_verdict(ws, direction, cfg),
        "joint": bounded_below_joint_search(ws, direction, cfg),
    }
    probes = {
        "supercyclic": supercyclicity_probe(ws, direction, cfg),
        "hypercyclic": hypercyclicity_probe(ws, direction, cfg),
    }
    horizon = max(cfg.horizon, 2)
    obstruction = unit_disk_obstruction(ws, direction, horizon)
    annulus = annulus_estimate(ws, horizon)
    if obstruction is Obstruction.OBSTRUCTED:
        outcome, reason = Outcome.NOT_DISKCYCLIC, "spectrum-inside-unit-disk"
    else:
        outcome = _merge(verdicts.values())
        reason = next((v.reason for v in verdicts.values() if v.outcome is outcome), "undecided")
        if outcome is Outcome.INCONCLUSIVE:
            reason = "undecided"
    return Classification(outcome, reason, verdicts, probes, obstruction, annulus)
