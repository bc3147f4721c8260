import math
import random

import pytest
from conftest import random_weights, weights
from hypothesis import given, settings
from hypothesis import strategies as st

from diskcyclic.core import (
    DomainError,
    Side,
    WeightSequence,
    bilateral_forward,
    reflect,
    unilateral_backward,
    unilateral_forward,
)
from diskcyclic.criteria import (
    CriterionConfig,
    Direction,
    Outcome,
    ProbeOutcome,
    backward_bilateral_verdict,
    bounded_below_joint_search,
    diverges_throughout,
    forward_bilateral_verdict,
    hypercyclicity_probe,
    log_window_product,
    reaches_infinity,
    record_indices,
    refutes_decay,
    second_criterion_certificate,
    stalled,
    supercyclicity_probe,
    trailing_start,
    unilateral_backward_verdict,
)

EX = WeightSequence({}, 3, 2)
SUPER = WeightSequence({}, 1 / 2, 1 / 3)
BOTH = WeightSequence({}, 3, 1 / 2)
ONES = WeightSequence.constant(1)

D, N, I = Outcome.DISKCYCLIC, Outcome.NOT_DISKCYCLIC, Outcome.INCONCLUSIVE


def naive_log_window(ws, j, n):
    return math.fsum(math.log(abs(ws.weight_at(k))) for k in range(j, j + n))


# --- window products --------------------------------------------------------


def test_log_window_examples():
    assert log_window_product(EX, -7, 7) == pytest.approx(7 * math.log(3), abs=1e-12)
    assert log_window_product(EX, 1, 10) == pytest.approx(10 * math.log(2), abs=1e-12)
    assert log_window_product(EX, 4, 0) == 0


def test_log_window_matches_term_by_term_up_to_512():
    rng = random.Random(7)
    for _ in range(30):
        ws = random_weights(rng, radius=6)
        for _ in range(10):
            n = rng.randint(0, 512)
            j = rng.randint(-600, 100)
            assert abs(log_window_product(ws, j, n) - naive_log_window(ws, j, n)) <= 1e-12 * max(1, n)


def test_log_window_rejects_one_sided_negative_start():
    with pytest.raises(DomainError):
        log_window_product(WeightSequence.constant(2, Side.ONE_SIDED), -1, 3)


# --- limit detection helpers -----------------------------------------------


def test_trailing_start():
    assert trailing_start(200, 0.25) == 151
    assert trailing_start(4, 0.25) == 4


def test_limit_helpers_on_geometric_sequences():
    growing = [0.5 * n for n in range(1, 201)]
    assert reaches_infinity(growing, 30, 151)
    assert record_indices(growing, 30)[0] == 61
    assert not reaches_infinity([min(v, 40) for v in growing], 30, 151)
    assert stalled([1.0] * 200, 151)
    assert diverges_throughout(growing, 30, 151)
    assert refutes_decay([0.0] * 200, 30, 151)
    assert not refutes_decay([-0.1 * n for n in range(1, 201)], 30, 151)


# --- bilateral verdicts -----------------------------------------------------


@pytest.mark.parametrize("ws,expected", [(EX, D), (SUPER, N), (BOTH, D), (ONES, N)])
def test_forward_verdict_examples(ws, expected):
    assert forward_bilateral_verdict(ws).outcome is expected


@pytest.mark.parametrize(
    "ws,expected",
    [
        (WeightSequence({0: 3}, 3, 2), N),  # adjoint of the 3/2 shift
        (WeightSequence({0: 1 / 3}, 1 / 3, 1 / 2), N),  # its inverse
        (WeightSequence({0: 1 / 3}, 1 / 3, 2), D),  # inverse of the 3 / (1/2) shift
    ],
)
def test_backward_verdict_examples(ws, expected):
    assert backward_bilateral_verdict(ws).outcome is expected


def test_forward_witness_sequence_is_a_tail_of_the_horizon():
    v = forward_bilateral_verdict(EX)
    ws = v.witness_sequence
    assert ws[-1] == 200 and list(ws) == list(range(ws[0], 201))
    assert v.evidence


@pytest.mark.parametrize(
    "ws,direction,expected",
    [(EX, "forward", D), (WeightSequence({0: 1 / 3}, 1 / 3, 1 / 2), "backward", N), (ONES, "forward", N)],
)
def test_joint_search_examples(ws, direction, expected):
    assert bounded_below_joint_search(ws, direction).outcome is expected


def test_mirror_symmetry_on_random_tables():
    rng = random.Random(11)
    for _ in range(40):
        ws = random_weights(rng)
        assert backward_bilateral_verdict(ws).outcome is forward_bilateral_verdict(reflect(ws)).outcome


@given(weights(real=True, radius=3), st.floats(31, 200))
@settings(max_examples=40, deadline=None)
def test_threshold_monotonicity(ws, tau2):
    lo = forward_bilateral_verdict(ws, CriterionConfig(tau_big=30.0)).outcome
    hi = forward_bilateral_verdict(ws, CriterionConfig(tau_big=tau2)).outcome
    assert hi is lo or hi is I


# --- unilateral ---------------------------------------------------------------


@pytest.mark.parametrize("a,expected", [(2, D), (1, N), (-1, N), (1j, N), (0.5, N), (1.01, I)])
def test_unilateral_verdict(a, expected):
    assert unilateral_backward_verdict(WeightSequence.constant(a, Side.ONE_SIDED)).outcome is expected


def test_unilateral_horizon_sensitivity():
    ws = WeightSequence.constant(1.01, Side.ONE_SIDED)
    assert 30 / math.log(1.01) == pytest.approx(3014.9, abs=0.1)
    assert unilateral_backward_verdict(ws, CriterionConfig(horizon=3014)).outcome is I
    assert unilateral_backward_verdict(ws, CriterionConfig(horizon=3015)).outcome is D


# --- probes -------------------------------------------------------------------


def test_probe_examples():
    P, Nn, Ip = ProbeOutcome.POSITIVE, ProbeOutcome.NEGATIVE, ProbeOutcome.INCONCLUSIVE
    assert supercyclicity_probe(SUPER, "forward").outcome is P
    assert supercyclicity_probe(EX, "forward").outcome is P
    assert supercyclicity_probe(ONES, "forward").outcome is Nn
    assert hypercyclicity_probe(EX, "forward").outcome is Nn
    assert hypercyclicity_probe(BOTH, "forward").outcome is P
    assert hypercyclicity_probe(ONES, "forward").outcome is Ip
    assert hypercyclicity_probe(EX, Direction.FORWARD).grade == "probe"


# --- certificate --------------------------------------------------------------


def test_certificate_examples():
    cfg = CriterionConfig(horizon=60, qmax=4)
    two_b = second_criterion_certificate(unilateral_backward(WeightSequence.constant(2, Side.ONE_SIDED)), 2, cfg)
    assert two_b.passed
    assert two_b.norms[0][9] == pytest.approx(2.0**-10)
    ones = second_criterion_certificate(unilateral_backward(WeightSequence.constant(1, Side.ONE_SIDED)), 2, cfg)
    assert not ones.passed and ones.norm_tail == pytest.approx(1.0)
    ex = second_criterion_certificate(bilateral_forward(EX), 4, cfg)
    assert ex.passed and ex.reconstruction_error <= 1e-10


def test_certificate_needs_a_right_inverse():
    with pytest.raises(ValueError):
        second_criterion_certificate(unilateral_forward(WeightSequence.constant(2, Side.ONE_SIDED)))


def test_certificate_pass_is_never_contradicted():
    rng = random.Random(5)
    cfg = CriterionConfig(horizon=60, qmax=4)
    for _ in range(15):
        ws = random_weights(rng, radius=2)
        op = bilateral_forward(ws)
        if second_criterion_certificate(op, 2, cfg).passed:
            assert forward_bilateral_verdict(ws).outcome is not N


def test_config_validation():
    with pytest.raises(ValueError):
        CriterionConfig(horizon=10, qmax=8)
    with pytest.raises(ValueError):
        CriterionConfig(tau_big=0)
