"""Converse-of-Simonis insertions.

Given a code whose weight-d codewords are exactly the scalar multiples of t independent
vectors a_1..a_t (and with a gap above d), replacing a_t by a_t plus one or two unit vectors
outside its support keeps [n, k, d] and drops the span of minimum-weight codewords to t - 1.
That frees q^(k-t+1) components in the distance graph for function values.
"""

import logging
from dataclasses import dataclass

import numpy as np

from src.codes import (
    Code,
    code_from_generator,
    codewords_of_weight,
    complete_basis,
    enumerate_codewords,
    independent_rows,
    min_distance,
    subcode_span_dim,
    weight_distribution,
    weights,
)
from src.config import ENUM_BUDGET, SEARCH_BUDGET
from src.errors import ConditionsViolated, PostconditionFailed
from src.models import CapabilityReport, ConditionReport, InsertionReport

logger = logging.getLogger(__name__)

MODES = {"one": 1, "two": 2}  # inserted positions
EXTRA_WEIGHTS = {"one": 1, "two": 3}  # empty weights above d required of the input


@dataclass
class MinWeightBasis:
    a: np.ndarray  # t independent weight-d codewords
    e: np.ndarray  # completion rows, each of weight > d
    t: int
    d: int


@dataclass
class InsertionResult:
    mode: str
    source: Code
    output: Code
    basis: MinWeightBasis
    b: np.ndarray
    positions: list[int]
    scalars: list[int]
    output_counts: dict[int, int]
    exhaustive: bool

    @property
    def t_before(self) -> int:
        return self.basis.t

    @property
    def t_after(self) -> int:
        return self.basis.t - 1

    def report(self) -> InsertionReport:
        return InsertionReport(
            mode=self.mode, n=self.output.n, k=self.output.k, d=self.basis.d,
            t_before=self.t_before, t_after=self.t_after,
            positions=self.positions, scalars=self.scalars, b=[int(x) for x in self.b],
            output_counts=self.output_counts, exhaustive=self.exhaustive,
            capability=fcc_capability(self),
        )


def min_weight_basis(code: Code, budget: int = ENUM_BUDGET, search_budget: int = SEARCH_BUDGET) -> MinWeightBasis:
    """Greedy independent subset of the weight-d codewords (canonical order), plus completion."""
    d = min_distance(code, budget, w_max=code.n, search_budget=search_budget)
    s_d = codewords_of_weight(code, d, search_budget)
    a = s_d[independent_rows(code.field, s_d)]
    e = complete_basis(code, a)
    logger.debug("%s: d=%d, %d weight-d codewords, t=%d", code.label(), d, len(s_d), len(a))
    return MinWeightBasis(a=a, e=e, t=len(a), d=d)


def check_insertion_conditions(code: Code, extra: int = 1, basis: MinWeightBasis | None = None,
                               budget: int = ENUM_BUDGET, search_budget: int = SEARCH_BUDGET) -> ConditionReport:
    """A_d = t(q-1) and A_{d+1} = ... = A_{d+extra} = 0."""
    basis = basis or min_weight_basis(code, budget, search_budget)
    d = basis.d
    dist = weight_distribution(code, w_max=d + extra, budget=budget, search_budget=search_budget)
    counts = {w: dist.a(w) for w in range(d, min(d + extra, code.n) + 1)}
    return ConditionReport(
        d=d, t=basis.t, q=code.q, counts=counts,
        a_d_matches=counts[d] == basis.t * (code.q - 1),
        zero_above=all(counts.get(w, 0) == 0 for w in range(d + 1, d + extra + 1)),
    )


def _insert(code: Code, mode: str, basis: MinWeightBasis | None, exhaustive: bool,
            budget: int, search_budget: int) -> InsertionResult:
    extra = EXTRA_WEIGHTS[mode]
    count = MODES[mode]
    if code.k < 2:
        raise ConditionsViolated(f"{code.label()}: insertion needs k >= 2")
    basis = basis or min_weight_basis(code, budget, search_budget)
    d, t, q = basis.d, basis.t, code.q
    if d < 1 + count:
        raise ConditionsViolated(f"{code.label()}: {mode}-position insertion needs d >= {1 + count}, got {d}")
    if d == code.n:
        raise ConditionsViolated(f"{code.label()}: full-length minimum-weight codewords leave no free position")
    if t <= 1:
        raise ConditionsViolated(f"{code.label()}: needs t > 1 independent minimum-weight codewords, got t={t}")
    conditions = check_insertion_conditions(code, extra, basis, budget, search_budget)
    if not conditions.holds:
        raise ConditionsViolated(
            f"{code.label()}: weight conditions fail (A_w for w={d}..{d + extra}: {conditions.counts}, t={t})"
        )

    a_t = basis.a[-1]
    free = np.flatnonzero(a_t == 0)
    if len(free) < count:
        raise ConditionsViolated(f"{code.label()}: need {count} positions outside supp(a_t), found {len(free)}")
    positions = [int(p) for p in free[:count]]
    b = a_t.copy()
    b[positions] = 1

    rows = np.vstack([basis.a[:-1], b[None, :], basis.e])
    output = code_from_generator(code.field, rows)
    if output.k != code.k or not np.array_equal(output.generator, rows):
        raise PostconditionFailed(f"Inserted generator lost rank ({output.k} < {code.k})")

    d_out = min_distance(output, budget, w_max=d, search_budget=search_budget)
    if d_out != d:
        raise PostconditionFailed(f"Minimum distance changed from {d} to {d_out}")
    top = d + (1 if mode == "two" else 0)
    span_dim = subcode_span_dim(output, top, search_budget)
    if span_dim != t - 1:
        raise PostconditionFailed(f"dim<S_{top}(D)> = {span_dim}, expected {t - 1}")
    out_dist = weight_distribution(output, w_max=d + 1, budget=budget, search_budget=search_budget)
    output_counts = {w: out_dist.a(w) for w in range(d, min(d + 1, code.n) + 1)}
    if output_counts[d] != (t - 1) * (q - 1):
        raise PostconditionFailed(f"A_{d}(D) = {output_counts[d]}, expected {(t - 1) * (q - 1)}")
    if mode == "two" and output_counts.get(d + 1, 0) != 0:
        raise PostconditionFailed(f"A_{d + 1}(D) = {output_counts[d + 1]}, expected 0")

    ran_exhaustive = False
    if exhaustive and output.size <= budget:
        _check_mu_cases(output, t, d + count, budget)
        ran_exhaustive = True
    logger.info("%s-position insertion on %s at %s: t %d -> %d", mode, code.label(), positions, t, t - 1)
    return InsertionResult(
        mode=mode, source=code, output=output, basis=basis, b=b, positions=positions,
        scalars=[1] * count, output_counts=output_counts, exhaustive=ran_exhaustive,
    )


def _check_mu_cases(output: Code, t: int, floor: int, budget: int) -> None:
    """Every codeword with a nonzero coefficient on b weighs at least floor."""
    words = enumerate_codewords(output, budget)
    q, k = output.q, output.k
    idx = np.arange(output.size)
    mu = (idx // q ** (k - t)) % q  # digit of row t-1 (the b row) in message order
    light = (mu != 0) & (weights(words) < floor)
    if np.any(light):
        raise PostconditionFailed(f"{int(light.sum())} codewords using b weigh less than {floor}")


def one_position_insert(code: Code, basis: MinWeightBasis | None = None, exhaustive: bool = False,
                        budget: int = ENUM_BUDGET, search_budget: int = SEARCH_BUDGET) -> InsertionResult:
    return _insert(code, "one", basis, exhaustive, budget, search_budget)


def two_position_insert(code: Code, basis: MinWeightBasis | None = None, exhaustive: bool = False,
                        budget: int = ENUM_BUDGET, search_budget: int = SEARCH_BUDGET) -> InsertionResult:
    if code.n < 3:
        raise ConditionsViolated(f"{code.label()}: two-position insertion needs n >= 3")
    return _insert(code, "two", basis, exhaustive, budget, search_budget)


def fcc_capability(code: Code | InsertionResult, d_f: int | None = None,
                   budget: int = ENUM_BUDGET, search_budget: int = SEARCH_BUDGET) -> CapabilityReport:
    """Component structure of G_{d_f - 1}: gamma = q^dim<S_{d_f-1}>, q^(k-dim) components.

    An InsertionResult defaults to the gap its construction guarantees (d+1 or d+2);
    a plain code defaults to d_f = d + 1.
    """
    if isinstance(code, InsertionResult):
        d = code.basis.d
        d_f = d_f or d + MODES[code.mode]
        code = code.output
    else:
        d = min_distance(code, budget, w_max=code.n, search_budget=search_budget)
        d_f = d_f or d + 1
    dim = subcode_span_dim(code, d_f - 1, search_budget)
    components = code.q ** (code.k - dim)
    return CapabilityReport(
        q=code.q, k=code.k, d_d=d, d_f=d_f, gap=d_f - d, subcode_dim=dim, gamma=code.q**dim,
        component_count=components, max_image_size=components, strict_possible=d_f > d and components > 1,
    )


def capability_table(code: Code, gaps: int = 4, budget: int = ENUM_BUDGET,
                     search_budget: int = SEARCH_BUDGET) -> list[CapabilityReport]:
    """Capability rows for d_f = d+1 .. d+gaps."""
    d = min_distance(code, budget, w_max=code.n, search_budget=search_budget)
    return [fcc_capability(code, d + g, budget, search_budget) for g in range(1, gaps + 1)]
