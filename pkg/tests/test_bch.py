"""Tests for src/bch.py."""

import numpy as np
import pytest

from src.bch import (
    bch_create,
    bch_fcc_capability,
    bch_min_distance,
    bch_subcode,
    bch_summary,
    cyclotomic_coset,
    expand_witness,
    subcode_exponents,
    verify_dimension_claims,
    verify_strictness,
    verify_weight3_containment,
    weight3_enumerate,
)
from src.codes import enumerate_codewords, membership
from src.errors import BudgetExceeded, HypothesisViolated, InputError, LengthMismatch, NotPrime

MODULUS = [1, 0, 1, 1]  # x^3 + x^2 + 1 over GF(5)


@pytest.fixture(scope="module")
def c12():
    return bch_create(5, 3, (1, 2), MODULUS)


@pytest.fixture(scope="module")
def subcode():
    return bch_subcode(5, 3, MODULUS)


def test_cyclotomic_cosets():
    assert cyclotomic_coset(1, 5, 124) == {1, 5, 25}
    assert cyclotomic_coset(2, 5, 124) == {2, 10, 50}
    assert cyclotomic_coset(6, 5, 124) == {6, 30, 26}
    assert cyclotomic_coset(0, 5, 124) == {0}
    assert cyclotomic_coset(31, 5, 124) == {31}
    with pytest.raises(InputError):
        cyclotomic_coset(1, 5, 0)


def test_dimensions(c12, subcode):
    assert (c12.n, c12.dimension, subcode.dimension) == (124, 118, 115)
    assert subcode.reps == (1, 2, 6)
    assert subcode_exponents(5, 3) == (1, 2, 6)
    assert subcode_exponents(7, 5) == (1, 2, 8, 50)


def test_generator_polynomial(c12):
    g = c12.generator_poly
    assert len(g) == 7
    assert g[-1] == 1
    code = c12.code
    assert code.k == 118
    assert code.cyclic
    assert not np.any(c12.evaluate(code.generator[:5]))


def test_parity_check_matches_generator(c12):
    code = c12.code
    assert code.H.shape == (6, 124)
    assert not np.any(code.H @ code.G[:10].T)


def test_membership_by_roots(c12):
    word = c12.code.generator[3]
    assert c12.membership(word)
    assert membership(c12.code, word)
    unit = np.zeros(124, dtype=np.int64)
    unit[0] = 1
    assert not c12.membership(unit)
    with pytest.raises(LengthMismatch):
        c12.membership(unit[:10])
    with pytest.raises(InputError):
        c12.membership(unit * 7)


def test_small_cyclic_code_by_enumeration():
    spec = bch_create(2, 3, (1,))  # Hamming [7, 4]
    assert spec.dimension == 4
    words = enumerate_codewords(spec.code)
    assert all(spec.membership(w) for w in words)
    assert bch_min_distance(spec) == 3


def test_minimum_distances(c12):
    assert bch_min_distance(c12) == 3
    assert bch_min_distance(bch_create(3, 3, (1, 2))) == 4


def test_weight3_witnesses(c12, subcode):
    witnesses = weight3_enumerate(c12, subcode.reps)
    assert witnesses
    assert [(w.i, w.j) for w in witnesses] == sorted((w.i, w.j) for w in witnesses)
    for w in witnesses:
        word = w.codeword(c12.n)
        assert np.count_nonzero(word) == 3
        assert c12.membership(word)
        assert w.subfield_ok
        assert w.quadratic_ok
        assert all(w.root_checks.values())
    assert [(w.i, w.j, w.a, w.b) for w in weight3_enumerate(c12, threads=3)] == \
        [(w.i, w.j, w.a, w.b) for w in witnesses]


def test_weight3_enumeration_guards(subcode):
    with pytest.raises(InputError):
        weight3_enumerate(subcode)
    with pytest.raises(BudgetExceeded):
        weight3_enumerate(bch_create(5, 3, (1, 2), MODULUS), pair_budget=100)


def test_expand_witness(c12, subcode):
    witness = weight3_enumerate(c12)[0]
    orbit = expand_witness(c12, witness)
    assert len(orbit) % 4 == 0
    assert len({tuple(r) for r in orbit}) == len(orbit)
    assert all(np.count_nonzero(r) == 3 for r in orbit)
    assert not np.any(subcode.evaluate(orbit[:50]))


def test_containment_at_five_three():
    report = verify_weight3_containment(5, 3, MODULUS)
    assert report.passed
    assert report.no_low_weight
    assert report.checked_exponents == [1, 2, 6]
    assert report.witness_count > 0
    assert len(report.sample) == min(10, report.witness_count)


def test_strictness_at_five_three():
    report = verify_strictness(5, 3, MODULUS)
    assert report.proper
    assert (report.dim_c12, report.dim_d, report.codim) == (118, 115, 3)
    assert report.codim_matches
    assert report.status == "found"
    assert report.failing_exponent == 6
    witness = np.array(report.witness)
    assert np.count_nonzero(witness) == 4
    assert bch_create(5, 3, (1, 2), MODULUS).membership(witness)
    assert not bch_subcode(5, 3, MODULUS).membership(witness)
    assert report.passed


def test_dimension_claims():
    report = verify_dimension_claims(5, 3)
    assert report.coset_sizes == {6: 3}
    assert (report.dim_c12, report.dim_d, report.formula_dim) == (118, 115, 115)
    assert report.passed
    assert verify_dimension_claims(7, 3).dim_d == 333
    large = verify_dimension_claims(5, 5)
    assert large.dim_d == 3104
    assert large.coset_sizes == {6: 5, 26: 5}
    assert large.passed


def test_hypothesis_violations():
    with pytest.raises(HypothesisViolated):
        bch_subcode(3, 3)
    with pytest.raises(HypothesisViolated):
        bch_subcode(5, 4)
    with pytest.raises(HypothesisViolated):
        verify_dimension_claims(5, 9)
    with pytest.raises(NotPrime):
        verify_dimension_claims(6, 3)


def test_fcc_capability():
    report = bch_fcc_capability(5, 3, MODULUS)
    assert (report.codim, report.coset_count, report.subcode_size_exponent) == (3, 125, 115)
    assert (report.d_d, report.d_f) == (3, 4)


def test_summary(c12):
    summary = bch_summary(c12)
    assert summary["cosets"] == {"1": [1, 5, 25], "2": [2, 10, 50]}
    assert summary["modulus"] == MODULUS
    assert summary["dimension"] == 118


@pytest.mark.slow
def test_containment_at_seven_three():
    report = verify_weight3_containment(7, 3, threads=4)
    assert report.passed
    assert report.n == 342


@pytest.mark.slow
def test_containment_at_five_five():
    report = verify_weight3_containment(5, 5, threads=4)
    assert report.passed
    assert report.checked_exponents == [1, 2, 6, 26]
