"""Tests for src/simonis.py."""

import pytest

from src.chain import ChainSpec, chain_generate
from src.codes import code_from_generator, min_distance, subcode_span_dim, weight_distribution
from src.errors import ConditionsViolated
from src.field import field_create
from src.simonis import (
    capability_table,
    check_insertion_conditions,
    fcc_capability,
    min_weight_basis,
    one_position_insert,
    two_position_insert,
)


def chain(variant, k, d, s, q):
    return chain_generate(ChainSpec(variant, k, d, s, field_create(q)))


ONE_POSITION = [("open", 2, 6, 1, 5), ("closed", 3, 6, 1, 3), ("open", 3, 6, 1, 3)]
TWO_POSITION = [("open", 2, 8, 2, 5), ("open", 3, 8, 1, 3)]


def test_min_weight_basis_of_chain():
    code = chain("open", 2, 6, 1, 5)
    basis = min_weight_basis(code)
    assert (basis.t, basis.d) == (2, 6)
    assert basis.a.tolist() == code.generator.tolist()
    assert basis.e.shape == (0, code.n)


def test_conditions_on_chain():
    report = check_insertion_conditions(chain("open", 3, 6, 1, 3))
    assert report.counts == {6: 6, 7: 0}
    assert report.holds


@pytest.mark.parametrize("params", ONE_POSITION, ids=str)
def test_one_position_insertion(params):
    code = chain(*params)
    k, d, q = params[1], params[2], params[4]
    result = one_position_insert(code, exhaustive=True)
    out = result.output
    assert (out.n, out.k) == (code.n, code.k)
    assert min_distance(out) == d
    assert subcode_span_dim(out, d) == k - 1
    assert result.output_counts[d] == (k - 1) * (q - 1)
    assert result.exhaustive
    assert len(result.positions) == 1
    assert result.b[result.positions[0]] == 1


@pytest.mark.parametrize("params", TWO_POSITION, ids=str)
def test_two_position_insertion(params):
    code = chain(*params)
    k, d = params[1], params[2]
    result = two_position_insert(code, exhaustive=True)
    out = result.output
    assert min_distance(out) == d
    assert subcode_span_dim(out, d + 1) == k - 1
    assert weight_distribution(out).a(d + 1) == 0
    assert result.output_counts[d + 1] == 0
    assert len(result.positions) == 2


def test_insertion_report():
    result = one_position_insert(chain("open", 2, 6, 1, 5))
    report = result.report()
    assert (report.mode, report.t_before, report.t_after) == ("one", 2, 1)
    assert report.capability.component_count == 5
    assert report.capability.d_f == 7


def test_capability_before_and_after():
    code = chain("open", 3, 6, 1, 3)
    before = fcc_capability(code)
    assert (before.d_d, before.d_f, before.max_image_size) == (6, 7, 1)
    assert not before.strict_possible
    after = fcc_capability(one_position_insert(code))
    assert (after.d_d, after.d_f, after.subcode_dim) == (6, 7, 2)
    assert (after.component_count, after.gamma) == (3, 9)
    assert after.strict_possible


def test_capability_table_rows():
    rows = capability_table(chain("open", 3, 6, 1, 3), gaps=2)
    assert [r.d_f for r in rows] == [7, 8]
    assert [r.gap for r in rows] == [1, 2]
    assert all(r.component_count == 1 for r in rows)


def test_single_minimum_weight_direction_rejected():
    code = code_from_generator(field_create(2), [[1, 1, 0, 0, 0], [0, 0, 1, 1, 1]])
    with pytest.raises(ConditionsViolated):
        one_position_insert(code)


def test_extra_low_weight_words_rejected():
    code = code_from_generator(field_create(2), [[1, 1, 0, 0], [0, 1, 1, 0]])
    assert not check_insertion_conditions(code).holds
    with pytest.raises(ConditionsViolated):
        one_position_insert(code)


def test_two_position_needs_distance_three():
    code = code_from_generator(field_create(2), [[1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0]])
    with pytest.raises(ConditionsViolated):
        two_position_insert(code)


def test_dimension_one_rejected():
    code = code_from_generator(field_create(3), [[1, 1, 1, 0]])
    with pytest.raises(ConditionsViolated):
        one_position_insert(code)
