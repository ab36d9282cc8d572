"""Acceptance harness: recompute every worked example and compare against its reference values.

Each target returns a TargetResult {target, passed, details}; details name every check with
the computed value so a failing run shows what diverged.
"""

import logging
from itertools import combinations

import numpy as np

from src.bch import (
    bch_create,
    bch_subcode,
    cyclotomic_coset,
    verify_dimension_claims,
    verify_strictness,
    verify_weight3_containment,
)
from src.chain import ChainSpec, chain_generate, length_comparison
from src.codes import load_code, min_distance, subcode_span_dim, weight_distribution
from src.config import DATA_DIR, Budgets
from src.distgraph import components_cayley, components_explicit
from src.errors import Ambiguous, InputError
from src.fcc import (
    FunctionSpec,
    build_encoding,
    check_feasibility,
    decode,
    load_encoding,
    load_function,
    verify_encoding,
)
from src.field import field_create, to_ints
from src.models import ReproduceSummary, TargetResult
from src.simonis import fcc_capability, one_position_insert, two_position_insert

logger = logging.getLogger(__name__)

BCH_MODULUS = [1, 0, 1, 1]  # x^3 + x^2 + 1 over GF(5)

CHAIN_ROWS = [
    # (variant, k, d, s, q, n, A_d)
    ("open", 2, 6, 1, 5, 11, 8),
    ("closed", 2, 6, 1, 5, 10, 8),
    ("open", 3, 6, 1, 3, 16, 6),
    ("closed", 3, 6, 1, 3, 15, 6),
    ("open", 4, 5, 1, 7, 17, 24),
    ("closed", 4, 5, 1, 7, 16, 24),
]

LENGTH_ROWS = [
    # (k, s_open, n_open, s_closed, n_closed, difference) at q = 5, d = 10
    (2, 4, 16, 2, 16, 0),
    (3, 4, 22, 3, 21, 1),
    (4, 4, 28, 3, 28, 0),
    (5, 4, 34, 3, 35, -1),
    (10, 4, 64, 4, 60, 4),
]

INSERTIONS = [
    # (mode, variant, k, d, s, q)
    ("one", "open", 2, 6, 1, 5),
    ("one", "closed", 3, 6, 1, 3),
    ("one", "open", 3, 6, 1, 3),
    ("two", "open", 2, 8, 2, 5),
    ("two", "open", 3, 8, 1, 3),
]


class _Checks:
    """Collects named comparisons for one target."""

    def __init__(self):
        self.details: list[str] = []
        self.passed = True

    def expect(self, label: str, got, want) -> None:
        ok = got == want
        self.passed &= ok
        self.details.append(f"{'ok' if ok else 'MISMATCH'} {label}: got {got}, expected {want}")

    def require(self, label: str, ok: bool) -> None:
        self.passed &= bool(ok)
        self.details.append(f"{'ok' if ok else 'FAILED'} {label}")

    def result(self, target: str) -> TargetResult:
        return TargetResult(target=target, passed=self.passed, details=self.details)


def _block_words(partition) -> list[set[str]]:
    return [{"".join(str(int(x)) for x in row) for row in block} for block in partition.blocks]


def reproduce_graph(budgets: Budgets = Budgets()) -> TargetResult:
    """Explicit distance graphs, the nonlinear-function encoding and its printed assignment."""
    checks = _Checks()
    triangles = load_code(DATA_DIR / "two_triangles.json")
    parts = components_explicit(triangles, 2, budgets.enum, budgets.pairs)
    checks.expect("G_2 of the six-word code: component sizes", parts.block_sizes, [3, 3])

    code = load_code(DATA_DIR / "four_components.json")
    f = load_function(DATA_DIR / "four_components_function.json", code.field)
    parts = components_explicit(code, 4, budgets.enum, budgets.pairs)
    checks.expect("G_4 component sizes", parts.block_sizes, [1, 3, 3, 1])
    report = check_feasibility(code, f, 4, 5, budgets.enum, budgets.search, budgets.pairs, budgets.grouping_nodes)
    checks.expect("d_min", report.d_min, 4)
    checks.expect("preimage sizes (00, 01, 10)", report.preimage_sizes, [3, 3, 2])
    checks.expect("grouping {S2}, {S3}, {S1 u S4}", report.grouping, [[1], [2], [0, 3]])

    enc = build_encoding(code, f, report, budget=budgets.enum, pair_budget=budgets.pairs)
    verified = verify_encoding(enc, "exhaustive", budgets.enum, budgets.search, budgets.pairs)
    checks.require("constructed encoding verifies exhaustively as a strict (f : 4, 5) encoding",
                   verified.passed and verified.strict)
    printed = load_encoding(DATA_DIR / "four_components_assignment.json", code, f)
    checks.require("printed assignment verifies exhaustively",
                   verify_encoding(printed, "exhaustive", budgets.enum, budgets.search, budgets.pairs).passed)

    function_ok = data_ok = True
    for message, word in zip(np.ndindex(*(2,) * f.k), printed.codewords):
        value = tuple(int(x) for x in f.values(message)[0])
        for support in combinations(range(code.n), 2):
            received = word.copy()
            received[list(support)] ^= 1
            try:
                function_ok &= decode(printed, received, "function") == value
            except Ambiguous:
                function_ok = False
        for pos in range(code.n):
            received = word.copy()
            received[pos] ^= 1
            data_ok &= decode(printed, received, "data") == message
    checks.require("every weight-2 error pattern: function value recovered", function_ok)
    checks.require("every weight-1 error pattern: message recovered", data_ok)
    return checks.result("graph")


def _cosets_target(fixture: str, alpha: int, subcode_dim: int, blocks: list[set[str]],
                   budgets: Budgets) -> _Checks:
    checks = _Checks()
    code = load_code(DATA_DIR / fixture)
    checks.expect("d_min", min_distance(code, budgets.enum), 2)
    checks.expect(f"dim <S_{alpha}>", subcode_span_dim(code, alpha, budgets.search), subcode_dim)
    cayley = components_cayley(code, alpha, budgets.search, budgets.coset_cap)
    explicit = components_explicit(code, alpha, budgets.enum, budgets.pairs)
    checks.expect("component count", cayley.block_count, len(blocks))
    checks.expect("component size", cayley.block_size, len(blocks[0]))
    got = sorted(_block_words(cayley), key=min)
    checks.expect("coset listing", got, sorted(blocks, key=min))
    checks.require("explicit and Cayley partitions agree", cayley.as_sets() == explicit.as_sets())
    return checks


def reproduce_cosets_binary(budgets: Budgets = Budgets()) -> TargetResult:
    blocks = [{"000000", "110000", "001100", "111100"}, {"000111", "110111", "001011", "111011"}]
    checks = _cosets_target("binary_cosets.json", 2, 2, blocks, budgets)
    code = load_code(DATA_DIR / "binary_cosets.json")
    spec = code.field
    balanced = FunctionSpec(kind="table", field=spec, k=3, table=np.array([[i >> 2] for i in range(8)]))
    lopsided = FunctionSpec(kind="table", field=spec, k=3, table=np.array([[int(i >= 5)] for i in range(8)]))
    report = check_feasibility(code, balanced, 2, 3, budgets.enum, budgets.search, budgets.pairs)
    checks.require("preimages {4, 4} admit a strict (f : 2, 3) encoding", report.feasible and report.strict)
    report = check_feasibility(code, lopsided, 2, 3, budgets.enum, budgets.search, budgets.pairs)
    checks.expect("preimages {5, 3}: grouping", report.c2_status, "infeasible")
    return checks.result("cosets-binary")


def reproduce_cosets_ternary(budgets: Budgets = Budgets()) -> TargetResult:
    blocks = [{"0000", "1100", "2200"}, {"0111", "1211", "2011"}, {"0222", "1022", "2122"}]
    checks = _cosets_target("ternary_cosets.json", 2, 1, blocks, budgets)
    code = load_code(DATA_DIR / "ternary_cosets.json")
    f = FunctionSpec(kind="projection", field=code.field, k=2, coords=(1,))
    report = check_feasibility(code, f, 2, 3, budgets.enum, budgets.search, budgets.pairs)
    checks.require("three values with preimages of size 3 admit a strict (f : 2, 3) encoding", report.feasible)
    return checks.result("cosets-ternary")


def reproduce_chains(budgets: Budgets = Budgets()) -> TargetResult:
    checks = _Checks()
    for variant, k, d, s, q, n, a_d in CHAIN_ROWS:
        spec = ChainSpec(variant, k, d, s, field_create(q))
        code = chain_generate(spec)
        dist = weight_distribution(code, budget=budgets.enum)
        measured_d = min(w for w, c in dist.counts.items() if w > 0 and c > 0)
        checks.expect(f"{spec.label()} [n, k, d]", (code.n, code.k, measured_d), (n, k, d))
        checks.expect(f"{spec.label()} (A_d, A_d+1)", (dist.a(d), dist.a(d + 1)), (a_d, 0))
    return checks.result("chains")


def reproduce_chain_lengths(budgets: Budgets = Budgets()) -> TargetResult:
    checks = _Checks()
    rows = length_comparison(5, 10, [row[0] for row in LENGTH_ROWS])
    for row, (k, s_o, n_o, s_c, n_c, diff) in zip(rows, LENGTH_ROWS):
        checks.expect(f"k={k} (s_o, n_o, s_c, n_c, n_o - n_c)",
                      (row.s_open, row.n_open, row.s_closed, row.n_closed, row.difference),
                      (s_o, n_o, s_c, n_c, diff))
    spec = ChainSpec("closed", 2, 10, 2, field_create(5))
    dist = weight_distribution(chain_generate(spec), budget=budgets.enum)
    checks.expect(f"{spec.label()} brute force (A_10, A_11, smallest weight)",
                  (dist.a(10), dist.a(11), min(w for w, c in dist.counts.items() if w > 0 and c > 0)),
                  (8, 0, 10))
    return checks.result("chain-lengths")


def reproduce_insertions(budgets: Budgets = Budgets()) -> TargetResult:
    checks = _Checks()
    insert = {"one": one_position_insert, "two": two_position_insert}
    for mode, variant, k, d, s, q in INSERTIONS:
        spec = ChainSpec(variant, k, d, s, field_create(q))
        code = chain_generate(spec)
        result = insert[mode](code, exhaustive=True, budget=budgets.enum, search_budget=budgets.search)
        out = result.output
        checks.expect(f"{mode}-position on {spec.label()}: (n, k, d) kept",
                      (out.n, out.k, min_distance(out, budgets.enum)), (code.n, k, d))
        checks.expect(f"{mode}-position on {spec.label()}: t", (result.t_before, result.t_after), (k, k - 1))
        if mode == "two":
            checks.expect(f"two-position on {spec.label()}: A_{d + 1}(D)", result.output_counts[d + 1], 0)
        checks.require(f"{mode}-position on {spec.label()}: enumeration of the inserted row", result.exhaustive)

    spec = ChainSpec("open", 3, 6, 1, field_create(3))
    code = chain_generate(spec)
    before = fcc_capability(code, budget=budgets.enum, search_budget=budgets.search)
    after = fcc_capability(one_position_insert(code, budget=budgets.enum, search_budget=budgets.search),
                           budget=budgets.enum, search_budget=budgets.search)
    checks.expect("capability before insertion: max image size", before.max_image_size, 1)
    checks.expect("capability after insertion: (d_d, d_f, max image size, components)",
                  (after.d_d, after.d_f, after.max_image_size, after.component_count), (6, 7, 3, 3))
    return checks.result("insertions")


def reproduce_bch(budgets: Budgets = Budgets()) -> TargetResult:
    """(p, m) = (5, 3): cosets, dimensions, containment, strictness and the structured encoding."""
    checks = _Checks()
    n = 124
    for i, want in ((1, {1, 5, 25}), (2, {2, 10, 50}), (6, {6, 30, 26})):
        checks.expect(f"Cl({i})", sorted(cyclotomic_coset(i, 5, n)), sorted(want))
    c12 = bch_create(5, 3, (1, 2), BCH_MODULUS)
    d = bch_subcode(5, 3, BCH_MODULUS)
    checks.expect("dim C_{1,2}, dim D", (c12.dimension, d.dimension), (118, 115))

    containment = verify_weight3_containment(5, 3, BCH_MODULUS, pair_budget=budgets.pairs, threads=budgets.threads)
    checks.require(f"all {containment.witness_count} weight-3 codewords lie in D", containment.passed)
    strictness = verify_strictness(5, 3, BCH_MODULUS, search_budget=budgets.search)
    checks.expect("codim", strictness.codim, 3)
    checks.require("6 lies outside Cl(1) u Cl(2)", strictness.proper)
    checks.expect("weight-4 codeword of C_{1,2} outside D", strictness.status, "found")
    checks.require("dimension claims", verify_dimension_claims(5, 3).passed)

    code = c12.code
    f = FunctionSpec(kind="projection", field=code.field, k=code.k, coords=(115, 116, 117))
    report = check_feasibility(code, f, 3, 4, budgets.enum, budgets.search, budgets.pairs,
                               budgets.grouping_nodes, budgets.coset_cap)
    checks.expect("image size and preimage size", (report.image_size, report.preimage_size_counts),
                  (125, {5**115: 125}))
    checks.require("feasible strict (f : 3, 4)", report.feasible and report.strict)
    enc = build_encoding(code, f, report, subcode=d.code, budget=budgets.enum, search_budget=budgets.search)
    structural = verify_encoding(enc, "structural", budgets.enum, budgets.search, budgets.pairs)
    checks.require("structured encoding passes structural verification", structural.passed)
    word = enc.encode(np.zeros((1, code.k), dtype=np.int64))[0]
    received = word.copy()
    received[7] = (received[7] + 1) % 5
    checks.expect("single error: function value decoded", decode(enc, received, "function"), (0, 0, 0))
    checks.require("encoded words are codewords", not np.any(to_ints(code.H @ code.field.array(word))))
    return checks.result("bch")


def reproduce_bch_large(budgets: Budgets = Budgets()) -> TargetResult:
    checks = _Checks()
    claims = verify_dimension_claims(7, 3)
    checks.expect("(7, 3) dim D", claims.dim_d, 333)
    checks.require("(7, 3) dimension claims", claims.passed)
    checks.require("(7, 3) weight-3 containment",
                   verify_weight3_containment(7, 3, pair_budget=budgets.pairs, threads=budgets.threads).passed)
    claims = verify_dimension_claims(5, 5)
    checks.expect("(5, 5) dim D", claims.dim_d, 3104)
    checks.require("(5, 5) dimension claims", claims.passed)
    containment = verify_weight3_containment(5, 5, pair_budget=budgets.pairs, threads=budgets.threads)
    checks.require(f"(5, 5) weight-3 containment over {containment.witness_count} witnesses", containment.passed)
    return checks.result("bch-large")


TARGETS = {
    "graph": reproduce_graph,
    "cosets-binary": reproduce_cosets_binary,
    "cosets-ternary": reproduce_cosets_ternary,
    "chains": reproduce_chains,
    "chain-lengths": reproduce_chain_lengths,
    "insertions": reproduce_insertions,
    "bch": reproduce_bch,
    "bch-large": reproduce_bch_large,
}
DEFAULT_TARGETS = [name for name in TARGETS if name != "bch-large"]


def reproduce(target: str = "all", budgets: Budgets = Budgets()) -> ReproduceSummary:
    names = DEFAULT_TARGETS if target == "all" else [target]
    results = []
    for name in names:
        if name not in TARGETS:
            raise InputError(f"Unknown reproduction target {name!r}")
        logger.info("Reproducing %s", name)
        results.append(TARGETS[name](budgets))
    return ReproduceSummary(passed=all(r.passed for r in results), results=results)
