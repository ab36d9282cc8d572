"""Tests for src/reproduce.py."""

import pytest

from src.errors import InputError
from src.reproduce import DEFAULT_TARGETS, TARGETS, reproduce

FAST_TARGETS = ["graph", "cosets-binary", "cosets-ternary", "chains", "chain-lengths", "insertions"]


@pytest.mark.parametrize("target", FAST_TARGETS)
def test_target_passes(target):
    result = TARGETS[target]()
    assert result.target == target
    assert result.passed, "\n".join(result.details)
    assert all(line.startswith("ok ") for line in result.details)


def test_bch_target():
    result = TARGETS["bch"]()
    assert result.passed, "\n".join(result.details)
    assert any("dim C_{1,2}, dim D" in line for line in result.details)


def test_all_skips_large_bch():
    assert "bch-large" not in DEFAULT_TARGETS
    assert set(DEFAULT_TARGETS) | {"bch-large"} == set(TARGETS)


def test_single_target_summary():
    summary = reproduce("chains")
    assert summary.passed
    assert [r.target for r in summary.results] == ["chains"]


def test_unknown_target():
    with pytest.raises(InputError):
        reproduce("tables")


@pytest.mark.slow
def test_large_bch_target():
    result = TARGETS["bch-large"]()
    assert result.passed, "\n".join(result.details)
