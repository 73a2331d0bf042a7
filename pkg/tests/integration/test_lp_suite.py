"""Randomized exact LPs: strong duality and Farkas certificates."""

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from strategies import seeds

from cone_duality.polyrat import HRep, LPStatus, maximize, verify_certificate
from cone_duality.random_instances import INFEASIBLE_SHAPES, random_lp

pytestmark = pytest.mark.integration


def system(A, b) -> HRep:
    return HRep(dim=len(A[0]), rows=tuple((tuple(a), Fraction(r)) for a, r in zip(A, b)))


@settings(max_examples=500)
@given(seed=seeds, rows=st.integers(1, 6), columns=st.integers(1, 4))
def test_strong_duality(seed, rows, columns):
    A, b, c = random_lp(np.random.default_rng(seed), rows, columns)
    outcome = maximize(A, b, c)
    assert outcome.status is LPStatus.OPTIMAL
    assert sum((y * r for y, r in zip(outcome.certificate, b)), Fraction(0)) == outcome.value
    assert verify_certificate(outcome, c, "max", system(A, b))


@pytest.mark.parametrize("shape", INFEASIBLE_SHAPES)
@settings(max_examples=100)
@given(seed=seeds, rows=st.integers(1, 6), columns=st.integers(1, 4))
def test_farkas_certificates(shape, seed, rows, columns):
    A, b, c = random_lp(np.random.default_rng(seed), rows, columns, feasible=False, shape=shape)
    outcome = maximize(A, b, c)
    assert outcome.status is LPStatus.INFEASIBLE
    assert verify_certificate(outcome, c, "max", system(A, b))
