"""Matrix-algebra checks: Jordan decompositions, polar formulas and order-norm inequalities."""

import numpy as np
import pytest

from cone_duality.cstar_checks import (
    LEMMA51_ITEMS,
    THM53_ITEMS,
    HermFunctional,
    check_lemma51,
    check_thm52,
    check_thm53,
    cone_probes,
    imaginary_part,
    is_hermitian,
    is_positive,
    jordan_decompose,
    op_norm,
    order_interval_bound,
    polar_membership,
    random_hermitian,
    random_psd,
    random_signed_hermitian,
    random_unitary,
    real_part,
    trace_norm,
    trace_norm_lower_bound,
)
from cone_duality.errors import HypothesisError


def test_norms_of_diagonal_matrix():
    a = np.diag([3.0, -4.0])
    assert op_norm(a) == pytest.approx(4.0)
    assert trace_norm(a) == pytest.approx(7.0)


def test_real_and_imaginary_parts(rng):
    a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    re, im = real_part(a), imaginary_part(a)
    assert is_hermitian(re) and is_hermitian(im)
    np.testing.assert_allclose(re + 1j * im, a, atol=1e-12)


def test_random_generators(rng):
    assert is_positive(random_psd(rng, 3))
    u = random_unitary(rng, 3)
    np.testing.assert_allclose(u.conj().T @ u, np.eye(3), atol=1e-10)


def test_jordan_of_diagonal_functional():
    decomposition = jordan_decompose(HermFunctional(np.diag([1.0, -1.0])))
    assert decomposition.holds
    np.testing.assert_allclose(decomposition.positive.rho, np.diag([1.0, 0.0]), atol=1e-12)
    np.testing.assert_allclose(decomposition.negative.rho, np.diag([0.0, 1.0]), atol=1e-12)
    assert decomposition.norm == pytest.approx(2.0)
    assert decomposition.positive_norm == pytest.approx(1.0)
    assert decomposition.negative_norm == pytest.approx(1.0)


def test_jordan_of_zero_functional():
    decomposition = jordan_decompose(HermFunctional(np.zeros((2, 2))))
    assert decomposition.holds
    assert decomposition.norm == 0
    assert decomposition.positive.norm == 0 and decomposition.negative.norm == 0


def test_functional_must_be_hermitian():
    with pytest.raises(HypothesisError):
        HermFunctional(np.array([[0.0, 1.0], [0.0, 0.0]]))
    with pytest.raises(HypothesisError):
        HermFunctional(np.zeros((2, 3)))


def test_functional_evaluation():
    phi = HermFunctional(np.diag([2.0, -1.0]))
    assert phi(np.eye(2)) == pytest.approx(1.0)
    assert phi.n == 2
    assert phi.norm == pytest.approx(3.0)


def test_jordan_suite():
    report = check_thm52(samples=200, n=4, seed=3)
    assert report.holds
    assert report.max_reconstruction_error < 1e-9


@pytest.mark.parametrize("item", sorted(THM53_ITEMS))
def test_order_norm_inequalities(item):
    report = check_thm53(item=item, samples=1500, seed=5, n=2, workers=2)
    assert report.holds
    assert report.samples == 1500
    assert 0 < report.max_ratio <= 1 + 1e-9
    assert report.statement == THM53_ITEMS[item]


@pytest.mark.parametrize("item", sorted(LEMMA51_ITEMS))
def test_polar_formulas(item):
    report = check_lemma51(item=item, samples=500, seed=5, n=3)
    assert report.holds


def test_polar_membership_of_identity():
    probes = [np.eye(2, dtype=complex)]
    outside = polar_membership(1, np.eye(2, dtype=complex), probes)
    assert not outside.claimed and not outside.sampled
    assert outside.excess < 0

    inside = polar_membership(1, -np.eye(2) + 1j * np.diag([1.0, -2.0]), probes)
    assert inside.claimed and inside.sampled
    assert inside.excess <= 0


def test_polar_membership_of_imaginary_cone():
    probes = [np.eye(2, dtype=complex)]
    # imaginary part diag(1, -1): the probe i·I pairs to 0, the separator i e2 e2* to 1
    x = 1j * np.diag([1.0, -1.0])
    membership = polar_membership(2, x, probes)
    assert not membership.claimed and not membership.sampled
    assert membership.excess < 0

    inside = polar_membership(2, 1j * np.eye(2) + np.diag([5.0, -5.0]), probes)
    assert inside.claimed and inside.sampled


def test_polar_candidates_cover_both_sides(rng):
    claimed = []
    for _ in range(200):
        x = random_signed_hermitian(rng, 2) + 1j * random_hermitian(rng, 2)
        membership = polar_membership(1, x, cone_probes(rng, 2))
        assert membership.claimed == membership.sampled
        assert membership.excess <= 1e-9
        claimed.append(membership.claimed)
    assert any(claimed) and not all(claimed)


def test_sampling_independent_of_workers():
    one = check_thm53(item=7, samples=2500, seed=9, workers=1)
    many = check_thm53(item=7, samples=2500, seed=9, workers=4)
    assert one.max_ratio == many.max_ratio
    assert one.max_violation == many.max_violation


def test_unknown_items():
    with pytest.raises(ValueError):
        check_thm53(item=9, samples=10, seed=0)
    with pytest.raises(ValueError):
        check_lemma51(item=5, samples=10, seed=0)


def test_self_adjoint_interval_example():
    lower, middle, upper = -np.eye(2), np.diag([0.0, 0.5]), np.eye(2)
    check = order_interval_bound(4, lower, middle, upper)
    assert check.holds
    assert check.lhs == pytest.approx(0.5)
    assert check.rhs == pytest.approx(1.0)

    check = order_interval_bound(8, lower, middle, upper)
    assert check.holds
    assert check.rhs == pytest.approx(4.0)


def test_interval_with_general_elements():
    lower = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    upper = lower + np.eye(2)
    check = order_interval_bound(3, lower, lower + 0.5 * np.eye(2), upper)
    assert check.holds
    assert order_interval_bound(7, lower, lower, upper).holds


def test_interval_hypotheses():
    with pytest.raises(HypothesisError):
        order_interval_bound(4, np.eye(2), np.zeros((2, 2)), np.eye(2))
    with pytest.raises(HypothesisError):
        order_interval_bound(8, np.array([[0, 1], [0, 0]]), np.eye(2), 2 * np.eye(2))
    with pytest.raises(ValueError):
        order_interval_bound(1, np.zeros((2, 2)), np.zeros((2, 2)), np.zeros((2, 2)))


def test_trace_norm_lower_bound(rng):
    rho = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    bound = trace_norm_lower_bound(rho, samples=200, seed=1)
    assert bound.lower_bound <= bound.exact * (1 + 1e-9)
    assert bound.relative_gap < 0.02
