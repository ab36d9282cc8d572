"""Tests for src/codes.py."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from src.codes import (
    code_from_codewords,
    code_from_generator,
    code_to_json,
    code_from_json,
    codewords_of_weight,
    complete_basis,
    coset_index,
    coset_partition,
    enumerate_codewords,
    load_code,
    low_weight_codewords,
    max_distance,
    membership,
    min_distance,
    save_code,
    span,
    subcode_span_dim,
    weight_distribution,
    weights,
)
from src.config import DATA_DIR
from src.errors import (
    BudgetExceeded,
    LengthMismatch,
    NotASubcode,
    ParseError,
    RankZero,
    SearchBudgetExceeded,
)
from src.field import field_create


@pytest.fixture
def binary_code():
    return load_code(DATA_DIR / "binary_cosets.json")


@pytest.fixture
def ternary_code():
    return load_code(DATA_DIR / "ternary_cosets.json")


@st.composite
def linear_codes(draw, max_n=10, max_k=5):
    q = draw(st.sampled_from([2, 3, 5]))
    n = draw(st.integers(2, max_n))
    k = draw(st.integers(1, min(max_k, n)))
    rows = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=k, max_size=k))
    if not any(any(r) for r in rows):
        rows[0][0] = 1
    return code_from_generator(field_create(q), rows)


def test_binary_fixture_parameters(binary_code):
    assert (binary_code.n, binary_code.k, binary_code.size) == (6, 3, 8)
    assert min_distance(binary_code) == 2
    assert max_distance(binary_code) == 5
    dist = weight_distribution(binary_code)
    assert dist.counts == {0: 1, 1: 0, 2: 2, 3: 2, 4: 1, 5: 2, 6: 0}
    assert dist.total == 8


def test_explicit_code_distances():
    code = load_code(DATA_DIR / "four_components.json")
    assert code.kind == "explicit"
    assert code.size == 8
    assert min_distance(code) == 4
    assert max_distance(code) == 6


def test_dependent_rows_are_reduced():
    gf2 = field_create(2)
    code = code_from_generator(gf2, [[1, 1, 0], [0, 1, 1], [1, 0, 1]])
    assert code.k == 2


def test_generator_errors():
    gf2 = field_create(2)
    with pytest.raises(RankZero):
        code_from_generator(gf2, [[0, 0, 0]])
    with pytest.raises(LengthMismatch):
        code_from_generator(gf2, [[1, 0], [1, 0, 1]])


def test_membership(ternary_code):
    assert membership(ternary_code, [1, 2, 1, 1])
    assert not membership(ternary_code, [1, 0, 0, 0])
    with pytest.raises(LengthMismatch):
        membership(ternary_code, [1, 1, 0])


def test_codewords_of_weight_matches_enumeration(ternary_code):
    words = enumerate_codewords(ternary_code)
    for w in range(1, ternary_code.n + 1):
        found = codewords_of_weight(ternary_code, w)
        expected = {tuple(r) for r in words[weights(words) == w]}
        assert {tuple(r) for r in found} == expected


def test_low_weight_codewords(binary_code):
    low = low_weight_codewords(binary_code, 2)
    assert low.tolist() == [[1, 1, 0, 0, 0, 0], [0, 0, 1, 1, 0, 0]]
    assert subcode_span_dim(binary_code, 2) == 2
    assert subcode_span_dim(binary_code, 3) == 3


def test_search_budget(binary_code):
    with pytest.raises(SearchBudgetExceeded):
        codewords_of_weight(binary_code, 3, budget=1)


def test_enumeration_budget(binary_code):
    with pytest.raises(BudgetExceeded):
        enumerate_codewords(binary_code, budget=4)
    with pytest.raises(BudgetExceeded):
        min_distance(binary_code, budget=4)


def test_large_code_uses_support_search():
    gf2 = field_create(2)
    rows = np.eye(20, 21, dtype=np.int64)
    rows[:, 20] = 1  # even-weight code
    code = code_from_generator(gf2, rows)
    assert min_distance(code, budget=2**10, w_max=3) == 2
    assert weight_distribution(code, w_max=2, budget=2**10).a(2) == 210


def test_span_of_nothing_is_zero_code():
    zero = span(field_create(3), np.zeros((0, 4), dtype=np.int64), 4)
    assert zero.k == 0
    assert zero.size == 1


def test_complete_basis(binary_code):
    completion = complete_basis(binary_code, [[1, 1, 0, 0, 0, 0]])
    assert completion.shape == (2, 6)
    stacked = code_from_generator(binary_code.field, np.vstack([[1, 1, 0, 0, 0, 0], completion]))
    assert stacked.k == 3
    with pytest.raises(NotASubcode):
        complete_basis(binary_code, [[1, 0, 0, 0, 0, 0]])


def test_binary_cosets(binary_code):
    sub = span(binary_code.field, low_weight_codewords(binary_code, 2))
    partition = coset_partition(binary_code, sub)
    assert (partition.count, partition.coset_size, partition.codim) == (2, 4, 1)
    assert partition.representatives.tolist() == [[0] * 6, [0, 0, 0, 1, 1, 1]]
    assert coset_index(partition, [1, 1, 0, 1, 1, 1]) == 1
    assert coset_index(partition, [1, 1, 1, 1, 0, 0]) == 0


def test_coset_partition_rejects_foreign_subcode(binary_code):
    foreign = span(binary_code.field, [[1, 0, 0, 0, 0, 0]])
    with pytest.raises(NotASubcode):
        coset_partition(binary_code, foreign)


def test_coset_cap_keeps_complement_only(ternary_code):
    zero = span(ternary_code.field, np.zeros((0, 4), dtype=np.int64), 4)
    partition = coset_partition(ternary_code, zero, cap=4)
    assert partition.count == 9
    assert partition.representatives is None
    assert partition.codim == 2


def test_code_descriptor_round_trip(tmp_path, ternary_code):
    save_code(ternary_code, tmp_path / "code.json")
    loaded = load_code(tmp_path / "code.json")
    assert np.array_equal(loaded.generator, ternary_code.generator)
    explicit = code_from_codewords(field_create(2), [[0, 0], [1, 1]])
    assert code_from_json(code_to_json(explicit)).codewords.tolist() == [[0, 0], [1, 1]]


def test_malformed_descriptor(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        load_code(path)
    with pytest.raises(ParseError):
        code_from_json({"n": 3})


@settings(max_examples=60, derandomize=True, deadline=None)
@given(linear_codes())
def test_weight_counts_divisible_by_q_minus_one(code):
    dist = weight_distribution(code)
    assert dist.a(0) == 1
    assert dist.total == code.size
    for w in range(1, code.n + 1):
        assert dist.a(w) % (code.q - 1) == 0


@settings(max_examples=40, derandomize=True, deadline=None)
@given(linear_codes(max_n=8, max_k=4), st.integers(1, 4))
def test_support_search_agrees_with_enumeration(code, w):
    words = enumerate_codewords(code)
    found = codewords_of_weight(code, w)
    assert {tuple(r) for r in found} == {tuple(r) for r in words[weights(words) == w]}
