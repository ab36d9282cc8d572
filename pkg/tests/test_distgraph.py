"""Tests for src/distgraph.py."""

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from src.codes import code_from_generator, load_code
from src.config import DATA_DIR
from src.distgraph import (
    UnionFind,
    components,
    components_cayley,
    components_explicit,
    is_connected,
    refines,
    to_dot,
)
from src.errors import BudgetExceeded
from src.field import field_create


@st.composite
def small_linear_codes(draw):
    q = draw(st.sampled_from([2, 3, 5]))
    max_k = {2: 8, 3: 5, 5: 3}[q]
    n = draw(st.integers(2, 14))
    k = draw(st.integers(1, min(max_k, n)))
    rows = draw(st.lists(st.lists(st.integers(0, q - 1), min_size=n, max_size=n), min_size=k, max_size=k))
    if not any(any(r) for r in rows):
        rows[0][-1] = 1
    return code_from_generator(field_create(q), rows)


def test_union_find():
    uf = UnionFind(5)
    uf.union(0, 1)
    uf.union(3, 4)
    uf.union(1, 0)
    assert sorted(sorted(g) for g in uf.groups()) == [[0, 1], [2], [3, 4]]
    assert uf.find(4) == uf.find(3)


def test_two_triangles():
    code = load_code(DATA_DIR / "two_triangles.json")
    parts = components_explicit(code, 2)
    assert parts.block_sizes == [3, 3]
    assert [b.tolist() for b in parts.blocks][0] == [[0, 0, 0, 0, 0], [0, 0, 0, 0, 1], [0, 0, 0, 1, 0]]
    assert is_connected(code, 3)


def test_four_components():
    code = load_code(DATA_DIR / "four_components.json")
    parts = components(code, 4)
    assert parts.method == "explicit"
    assert parts.block_sizes == [1, 3, 3, 1]
    assert parts.blocks[3].tolist() == [[1, 1, 1, 0, 0, 0, 0, 1, 1]]
    assert components(code, 3).block_count == 8
    assert components(code, 5).block_count == 1


@pytest.mark.parametrize("fixture, count, size, dim", [
    ("binary_cosets.json", 2, 4, 2),
    ("ternary_cosets.json", 3, 3, 1),
])
def test_cayley_components(fixture, count, size, dim):
    code = load_code(DATA_DIR / fixture)
    parts = components_cayley(code, 2)
    assert (parts.block_count, parts.block_size, parts.subcode_dim) == (count, size, dim)
    assert parts.block_sizes == [size] * count
    assert parts.as_sets() == components_explicit(code, 2).as_sets()


def test_cayley_without_blocks():
    code = load_code(DATA_DIR / "ternary_cosets.json")
    parts = components_cayley(code, 2, cap=4)
    assert parts.blocks is None
    assert parts.block_count == 3
    with pytest.raises(BudgetExceeded):
        parts.as_sets()


def test_pair_budget():
    code = load_code(DATA_DIR / "four_components.json")
    with pytest.raises(BudgetExceeded):
        components_explicit(code, 4, pair_budget=10)


def test_dot_lists_edges_in_order():
    code = load_code(DATA_DIR / "two_triangles.json")
    dot = to_dot(code, 1)
    lines = dot.splitlines()
    assert lines[0] == "graph G1 {"
    assert lines[-1] == "}"
    assert '  "00000" -- "00001";' in lines
    assert '  "00000" -- "00010";' in lines
    assert '  "01111" -- "11111";' in lines
    assert '  "00001" -- "00010";' not in lines
    assert dot == to_dot(code, 1)


@settings(max_examples=200, derandomize=True, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(small_linear_codes(), st.integers(1, 4))
def test_explicit_and_cayley_agree(code, alpha):
    assert components_cayley(code, alpha).as_sets() == components_explicit(code, alpha).as_sets()


@settings(max_examples=60, derandomize=True, deadline=None)
@given(small_linear_codes(), st.integers(1, 4))
def test_larger_alpha_coarsens(code, alpha):
    fine = components(code, alpha)
    coarse = components(code, alpha + 1)
    assert refines(fine, coarse)
    assert coarse.block_count <= fine.block_count
