from fractions import Fraction

import pytest

from anyonlat.gluing import glue_selfdual_8
from anyonlat.lattices import cartan_a, e8_gram
from anyonlat.metric_groups import BudgetExceededError
from anyonlat.weights import coset_minima, extremality_score, minimum_nonzero_norm


def test_rank23_pair():
    m1 = coset_minima([[2, 1], [1, 12]])
    m2 = coset_minima([[4, 1], [1, 6]])
    assert len(m1) == len(m2) == 23
    assert min(v for v in m1.values() if v) == Fraction(1, 23)
    assert min(v for v in m2.values() if v) == Fraction(2, 23)
    # Same model, so the weight multisets agree mod 1.
    assert sorted(v % 1 for v in m1.values()) == sorted(v % 1 for v in m2.values())


def test_rank_one():
    assert sorted(coset_minima([[2]]).values()) == [0, Fraction(1, 4)]
    # (4): cosets 0, +-1, 2 have shortest representatives 0, +-1, 2, so the
    # minima are 0, 1/8, 1/8, 1/2.
    assert sorted(coset_minima([[4]]).values()) == [0, Fraction(1, 8), Fraction(1, 8), Fraction(1, 2)]


def test_su3_weights():
    m = coset_minima([[2, 1], [1, 2]])
    assert sorted(m.values()) == [0, Fraction(1, 3), Fraction(1, 3)]


def test_minimum_norms():
    assert minimum_nonzero_norm([[2]]) == 2
    assert minimum_nonzero_norm(e8_gram().gram) == 2
    assert minimum_nonzero_norm(glue_selfdual_8([[2]]).lattice.gram) == 2
    assert minimum_nonzero_norm(cartan_a(5).gram) == 2
    assert minimum_nonzero_norm([[4, 0], [0, 6]]) == 4


def test_extremality_scores():
    assert extremality_score(e8_gram().gram) == 2
    assert extremality_score([[2]]) == 0
    # N = 23 anyon types, rank 2: 23/2 + 253 - 6 * sum(h).
    m1 = coset_minima([[2, 1], [1, 12]])
    expected = Fraction(23 * 2, 4) + Fraction(23 * 22, 2) - 6 * sum(m1.values())
    assert extremality_score([[2, 1], [1, 12]]) == expected


def test_weight_congruence_internal_check():
    # coset_minima itself asserts h = q2/2 mod 1; run a spread of matrices.
    for gram in ([[2, 1], [1, 4]], [[6, 1], [1, 4]], [[2, 0, 1], [0, 2, -1], [1, -1, 2]]):
        minima = coset_minima(gram)
        assert all(v >= 0 for v in minima.values())


def test_budget_and_definiteness_errors():
    with pytest.raises(ValueError):
        coset_minima([[0, 2], [2, 0]])
    with pytest.raises(BudgetExceededError):
        coset_minima([[2, 1], [1, 12]], budget=5)
