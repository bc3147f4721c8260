"""Shared random generators for the test suite."""

import random

import pytest
from hypothesis import strategies as st

from diskcyclic.core import Side, SparseVector, WeightSequence

moduli = st.floats(0.25, 4.0)
angles = st.floats(-3.14, 3.14)


@st.composite
def weights(draw, side=Side.TWO_SIDED, real=False, radius=4):
    def one():
        import cmath

        r = draw(moduli)
        if real:
            return r * draw(st.sampled_from([1, -1]))
        return cmath.rect(r, draw(angles))

    lo = 0 if side is Side.ONE_SIDED else -radius
    keys = draw(st.lists(st.integers(lo, radius), unique=True, max_size=2 * radius + 1))
    table = {k: one() for k in keys}
    return WeightSequence(table, one(), one(), side)


@st.composite
def vectors(draw, lo=-6, hi=6, max_size=5):
    keys = draw(st.lists(st.integers(lo, hi), unique=True, min_size=1, max_size=max_size))
    vals = [complex(draw(st.floats(-2, 2)), draw(st.floats(-2, 2))) for _ in keys]
    return SparseVector(dict(zip(keys, vals)))


def random_weights(rng: random.Random, radius: int = 4, lo: float = 0.25, hi: float = 4.0) -> WeightSequence:
    """Real positive tail-constant weights with a random table of the given radius."""
    table = {k: rng.uniform(lo, hi) for k in range(-radius, radius + 1) if rng.random() < 0.5}
    return WeightSequence(table, rng.uniform(lo, hi), rng.uniform(lo, hi))


@pytest.fixture
def rng():
    return random.Random(20261015)
