"""Spectral annulus estimates for bilateral weighted shifts.

The spectrum of an invertible bilateral shift with our tail-constant weights
is a single annulus, so a connected component inside the open unit disk
exists exactly when the outer radius is below 1.  That is the only spectral
obstruction implemented here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import DomainError, InvertibilityError, WeightSequence

OBSTRUCTION_MARGIN = 1e-6


class Obstruction(str, Enum):
    OBSTRUCTED = "Obstructed"
    NOT_OBSTRUCTED = "NotObstructed"


@dataclass(frozen=True)
class AnnulusEstimate:
    outer_radius: float
    inner_radius: float
    horizon_used: int


def _require_two_sided(ws: WeightSequence) -> None:
    if ws.one_sided:
        raise DomainError("spectral estimates need a two-sided weight sequence")


def outer_radius_estimate(ws: WeightSequence, horizon: int = 400) -> float:
    """``max_n sup_j |w_j ... w_{j+n-1}|^(1/n)`` over the trailing half of the horizon.

    Only windows meeting the table or the tail junction can beat the pure
    tail values, so ``j`` is swept over that finite range.
    """
    _require_two_sided(ws)
    if horizon < 1:
        raise ValueError("horizon must be positive")
    tails = max(math.log(abs(ws.neg_tail)), math.log(abs(ws.pos_tail)))
    reach = ws.radius + 1
    best = -math.inf
    for n in range(max(1, (horizon + 1) // 2), horizon + 1):
        j = np.arange(-reach - n, reach + 1)
        best = max(best, float(ws.log_sum(j, n).max()) / n, tails)
    return math.exp(best)


def inner_radius_estimate(ws: WeightSequence, horizon: int = 400) -> float:
    _require_two_sided(ws)
    if ws.inf_modulus <= 0:
        raise InvertibilityError("weights are not bounded away from zero")
    return 1.0 / outer_radius_estimate(ws.transformed(lambda w: 1 / w), horizon)


def annulus_estimate(ws: WeightSequence, horizon: int = 400) -> AnnulusEstimate:
    outer = outer_radius_estimate(ws, horizon)
    inner = inner_radius_estimate(ws, horizon)
    return AnnulusEstimate(outer, inner, horizon)


def unit_disk_obstruction(ws: WeightSequence, direction="forward", horizon: int = 400) -> Obstruction:
    """Spectrum strictly inside the unit disk rules out diskcyclicity.

    ``direction`` is accepted for symmetry with the criteria; forward and
    backward shifts with the same weights share their spectral radius.
    """
    if str(getattr(direction, "value", direction)) not in ("forward", "backward"):
        raise ValueError(f"unknown direction {direction!r}")
    if outer_radius_estimate(ws, horizon) < 1 - OBSTRUCTION_MARGIN:
        return Obstruction.OBSTRUCTED
    return Obstruction.NOT_OBSTRUCTED
