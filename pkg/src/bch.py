"""Narrow-sense BCH codes over GF(p) and the subcode D that keeps every weight-3 codeword.

C_{1,2} has defining set Cl(1) u Cl(2) in Z_n, n = p^m - 1. For p >= 5 and odd m its weight-3
codewords all satisfy the extra parity checks at alpha^(p^r + 1), r <= (m-1)/2, so
D = C_{1,2,p+1,...,p^((m-1)/2)+1} contains <S_3(C_{1,2})> while still missing some weight-4
codewords. The cosets of D in C_{1,2} then carry function values at distance 4.

Membership is tested by root evaluation. A word with coefficients in GF(p) vanishing at
alpha^e vanishes on the whole cyclotomic coset of e, so one representative per coset is enough.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property

import galois
import numpy as np

from src.codes import Code, canonical_sort, iter_normalised_words, rref, scalar_multiples, search_cost
from src.config import PAIR_BUDGET, SEARCH_BUDGET
from src.errors import (
    BudgetExceeded,
    HypothesisViolated,
    InputError,
    LengthMismatch,
    NotPrime,
    PostconditionFailed,
    SearchBudgetExceeded,
)
from src.field import FieldSpec, field_create, to_ints
from src.models import (
    BchCapabilityReport,
    ContainmentReport,
    DimensionClaimsReport,
    StrictnessReport,
    Weight3Record,
)

logger = logging.getLogger(__name__)

PAIR_BLOCK = 64  # leading indices per worker task


def cyclotomic_coset(i: int, p: int, n: int) -> frozenset:
    """Orbit of i under multiplication by p modulo n."""
    if n < 1:
        raise InputError(f"Cyclotomic cosets need n >= 1, got {n}")
    start = i % n
    orbit = {start}
    x = start * p % n
    while x != start:
        orbit.add(x)
        x = x * p % n
    return frozenset(orbit)


@dataclass(frozen=True, eq=False)
class CyclicCodeSpec:
    p: int
    m: int
    field: FieldSpec  # GF(p^m) with the primitive element alpha
    base_exponents: tuple[int, ...]
    defining_set: frozenset
    reps: tuple[int, ...]  # smallest member of each distinct coset

    @property
    def n(self) -> int:
        return self.p**self.m - 1

    @property
    def dimension(self) -> int:
        return self.n - len(self.defining_set)

    @cached_property
    def powers(self) -> galois.FieldArray:
        """alpha^0 .. alpha^(n-1)."""
        gf = self.field.gf
        return gf(self.field.alpha) ** np.arange(self.n)

    @cached_property
    def prime_field(self) -> FieldSpec:
        return field_create(self.p)

    @cached_property
    def parity_check(self) -> np.ndarray:
        """GF(p) parity checks: coordinates of alpha^(e*i) in the polynomial basis, e over reps."""
        n = self.n
        blocks = [to_ints(self.powers[(e * np.arange(n)) % n].vector()).T for e in self.reps]
        if not blocks:
            return np.zeros((0, n), dtype=np.int64)
        reduced, _ = rref(self.prime_field, np.vstack(blocks))
        return reduced

    @cached_property
    def generator_poly(self) -> tuple[int, ...]:
        """Ascending GF(p) coefficients of prod (x - alpha^e) over the defining set."""
        if not self.defining_set:
            return (1,)
        poly = galois.Poly.Roots(self.powers[sorted(self.defining_set)])
        return tuple(int(c) for c in np.asarray(poly.coeffs)[::-1])

    @cached_property
    def code(self) -> Code:
        """The code over GF(p), generated by the shifts of the generator polynomial."""
        g = np.asarray(self.generator_poly, dtype=np.int64)
        k = self.dimension
        generator = np.zeros((k, self.n), dtype=np.int64)
        rows = np.arange(k)[:, None]
        generator[rows, rows + np.arange(len(g))[None, :]] = g
        return Code(
            field=self.prime_field, n=self.n, kind="linear", generator=generator,
            cyclic=True, parity_check=self.parity_check,
        )

    def evaluate(self, words, exponents=None) -> np.ndarray:
        """c(alpha^e) for each word (rows) and exponent (columns), as integers of GF(p^m)."""
        exponents = np.asarray(self.reps if exponents is None else exponents, dtype=np.int64)
        words = np.atleast_2d(np.asarray(words, dtype=np.int64))
        if exponents.size == 0:
            return np.zeros((words.shape[0], 0), dtype=np.int64)
        points = self.powers[np.outer(exponents, np.arange(self.n)) % self.n]
        return to_ints(self.field.gf(words) @ points.T)

    def membership(self, word) -> bool:
        word = np.asarray(word, dtype=np.int64)
        if word.shape != (self.n,):
            raise LengthMismatch(f"Word of length {word.size} tested against a length-{self.n} code")
        if word.min() < 0 or word.max() >= self.p:
            raise InputError(f"Word has entries outside GF({self.p})")
        return not np.any(self.evaluate(word))

    def label(self) -> str:
        exps = ",".join(str(e) for e in self.base_exponents)
        return f"C_{{{exps}}} over GF({self.p}), n={self.n}"


def bch_create(p: int, m: int, base_exponents, modulus=None, primitive=None) -> CyclicCodeSpec:
    """Cyclic code of length p^m - 1 whose defining set is the union of Cl(e), e in base_exponents."""
    spec = field_create(p, m, modulus, primitive)
    n = spec.order - 1
    exps = tuple(sorted({int(e) % n for e in base_exponents}))
    cosets = [cyclotomic_coset(e, p, n) for e in exps]
    defining_set = frozenset().union(*cosets)
    reps = tuple(sorted({min(c) for c in cosets}))
    logger.debug("Cyclic code over GF(%d), n=%d, exponents %s: |T|=%d", p, n, exps, len(defining_set))
    return CyclicCodeSpec(p=p, m=m, field=spec, base_exponents=exps, defining_set=defining_set, reps=reps)


def subcode_exponents(p: int, m: int) -> tuple[int, ...]:
    return (1, 2) + tuple(p**r + 1 for r in range(1, (m - 1) // 2 + 1))


def _require_subcode_hypothesis(p: int, m: int) -> None:
    if p < 5 or m < 3 or m % 2 == 0:
        raise HypothesisViolated(f"The subcode D needs p >= 5 and odd m >= 3, got p={p}, m={m}")


def bch_subcode(p: int, m: int, modulus=None, primitive=None) -> CyclicCodeSpec:
    """D = C_{1,2,p+1,...,p^((m-1)/2)+1}."""
    _require_subcode_hypothesis(p, m)
    spec = bch_create(p, m, subcode_exponents(p, m), modulus, primitive)
    if galois.is_prime(m):
        expected = p**m - 1 - m * (m + 3) // 2
        if spec.dimension != expected:
            raise PostconditionFailed(f"dim D = {spec.dimension}, expected {expected} for prime m={m}")
    return spec


# --- Weight-3 codewords of C_{1,2} ---

@dataclass
class Weight3Witness:
    """Codeword 1 + a x^i + b x^j of C_{1,2}, normalised by a cyclic shift and a scalar."""

    i: int
    j: int
    a: int
    b: int
    subfield_ok: bool  # alpha^i and alpha^j lie in GF(p)
    quadratic_ok: bool  # a(a+b)x^2 + 2ax + (b+1) = 0 at x = alpha^i
    root_checks: dict[int, bool] = field(default_factory=dict)

    def codeword(self, n: int) -> np.ndarray:
        word = np.zeros(n, dtype=np.int64)
        word[[0, self.i, self.j]] = [1, self.a, self.b]
        return word

    def record(self) -> Weight3Record:
        return Weight3Record(
            i=self.i, j=self.j, a=self.a, b=self.b, roots_ok=all(self.root_checks.values()),
            subfield_ok=self.subfield_ok, quadratic_ok=self.quadratic_ok,
        )


def _pair_block(spec: CyclicCodeSpec, lo: int, hi: int) -> list[tuple[int, int, int, int]]:
    """Solve 1 + aX + bY = 0, 1 + aX^2 + bY^2 = 0 for every i in [lo, hi) and j > i."""
    powers, p = spec.powers, spec.p
    found = []
    for i in range(lo, hi):
        x = powers[i]
        y = powers[i + 1:]
        det = x * y * (y - x)
        a = to_ints((y - y * y) / det)
        b = to_ints((x * x - x) / det)
        keep = np.flatnonzero((a > 0) & (a < p) & (b > 0) & (b < p))
        found.extend((i, i + 1 + int(t), int(a[t]), int(b[t])) for t in keep)
    return found


def weight3_enumerate(spec: CyclicCodeSpec, check_exponents=(), pair_budget: int = PAIR_BUDGET,
                      threads: int = 1) -> list[Weight3Witness]:
    """Every weight-3 codeword of C_{1,2} with position 0 carrying coefficient 1, ordered by (i, j).

    check_exponents: extra exponents e at which each witness is evaluated (root_checks).
    """
    n, p = spec.n, spec.p
    if spec.defining_set != cyclotomic_coset(1, p, n) | cyclotomic_coset(2, p, n):
        raise InputError(f"Weight-3 enumeration expects C_{{1,2}}, got {spec.label()}")
    pairs = (n - 1) * (n - 2) // 2
    if pairs > pair_budget:
        raise BudgetExceeded(f"{pairs} position pairs exceed the pair budget {pair_budget}")

    bounds = [(lo, min(lo + PAIR_BLOCK, n - 1)) for lo in range(1, n - 1, PAIR_BLOCK)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            blocks = list(pool.map(lambda b: _pair_block(spec, *b), bounds))
    else:
        blocks = [_pair_block(spec, lo, hi) for lo, hi in bounds]
    solutions = [s for block in blocks for s in block]
    logger.info("Weight-3 search on %s: %d pairs, %d witnesses", spec.label(), pairs, len(solutions))
    if not solutions:
        return []

    gf = spec.field.gf
    i_idx, j_idx, a_int, b_int = (np.array(col, dtype=np.int64) for col in zip(*solutions))
    x, y = spec.powers[i_idx], spec.powers[j_idx]
    a, b = gf(a_int), gf(b_int)
    one, two = gf(1), gf(2 % p)
    first = to_ints(one + a * x + b * y)
    second = to_ints(one + a * x * x + b * y * y)
    if np.any(first) or np.any(second):
        raise PostconditionFailed("A weight-3 solution fails the parity checks at alpha or alpha^2")
    subfield = to_ints(x**p - x) == 0
    subfield &= to_ints(y**p - y) == 0
    quadratic = to_ints(a * (a + b) * x * x + two * a * x + (b + one)) == 0

    exps = [int(e) for e in check_exponents]
    roots = np.ones((len(solutions), 0), dtype=bool)
    if exps:
        words = np.zeros((len(solutions), n), dtype=np.int64)
        rows = np.arange(len(solutions))
        words[rows, 0] = 1
        words[rows, i_idx] = a_int
        words[rows, j_idx] = b_int
        roots = spec.evaluate(words, exps) == 0

    return [
        Weight3Witness(
            i=int(i_idx[t]), j=int(j_idx[t]), a=int(a_int[t]), b=int(b_int[t]),
            subfield_ok=bool(subfield[t]), quadratic_ok=bool(quadratic[t]),
            root_checks={e: bool(roots[t, c]) for c, e in enumerate(exps)},
        )
        for t in range(len(solutions))
    ]


def expand_witness(spec: CyclicCodeSpec, witness: Weight3Witness) -> np.ndarray:
    """All cyclic shifts times all nonzero scalars of a witness, deduplicated, canonical order."""
    word = witness.codeword(spec.n)
    shifts = np.stack([np.roll(word, s) for s in range(spec.n)])
    orbit = np.unique(scalar_multiples(spec.prime_field, shifts), axis=0)
    return canonical_sort(orbit)


def _no_low_weight(spec: CyclicCodeSpec) -> bool:
    """No codeword of weight 1 or 2 (a weight-2 word 1 + a x^i forces a = -1/alpha^i)."""
    gf = spec.field.gf
    x = spec.powers[1:]
    a = -(gf(1) / x)
    in_prime_field = to_ints(a) < spec.p
    vanishes = to_ints(gf(1) + a * x * x) == 0
    # weight 1: a x^i never vanishes at alpha
    return not np.any(in_prime_field & vanishes)


def verify_weight3_containment(p: int, m: int, modulus=None, primitive=None,
                               pair_budget: int = PAIR_BUDGET, threads: int = 1,
                               sample: int = 10) -> ContainmentReport:
    """Every weight-3 codeword of C_{1,2} vanishes on the defining set of D."""
    subcode = bch_subcode(p, m, modulus, primitive)
    c12 = bch_create(p, m, (1, 2), modulus, primitive)
    witnesses = weight3_enumerate(c12, subcode.reps, pair_budget, threads)
    roots_ok = all(all(w.root_checks.values()) for w in witnesses)
    subfield_ok = all(w.subfield_ok for w in witnesses)
    quadratic_ok = all(w.quadratic_ok for w in witnesses)
    no_low_weight = _no_low_weight(c12)
    passed = bool(witnesses) and roots_ok and subfield_ok and quadratic_ok and no_low_weight
    logger.info("Containment at (p, m) = (%d, %d): %d witnesses, passed=%s", p, m, len(witnesses), passed)
    return ContainmentReport(
        p=p, m=m, n=c12.n, checked_exponents=list(subcode.reps), witness_count=len(witnesses),
        roots_ok=roots_ok, subfield_ok=subfield_ok, quadratic_ok=quadratic_ok,
        no_low_weight=no_low_weight, passed=passed,
        sample=[w.record() for w in witnesses[:sample]],
    )


def verify_strictness(p: int, m: int, modulus=None, primitive=None,
                      search_budget: int = SEARCH_BUDGET) -> StrictnessReport:
    """D is proper in C_{1,2}, and some weight-4 codeword of C_{1,2} lies outside D."""
    subcode = bch_subcode(p, m, modulus, primitive)
    c12 = bch_create(p, m, (1, 2), modulus, primitive)
    n = c12.n
    proper = (p + 1) % n not in c12.defining_set
    codim = c12.dimension - subcode.dimension
    codim_expected = m * (m - 1) // 2
    codim_matches = codim == codim_expected

    cost = search_cost(n, p, 4, cyclic=True)
    if cost > search_budget:
        raise SearchBudgetExceeded(f"Weight-4 search on {c12.label()} needs {cost} steps (budget {search_budget})")
    extra = [e for e in subcode.reps if e not in c12.defining_set]
    witness = failing = None
    for chunk in iter_normalised_words(c12.code, 4):
        if not len(chunk):
            continue
        values = subcode.evaluate(chunk, extra)
        outside = np.flatnonzero(np.any(values != 0, axis=1))
        if len(outside):
            witness = chunk[outside[0]]
            failing = extra[int(np.flatnonzero(values[outside[0]])[0])]
            break

    if witness is not None and (np.count_nonzero(witness) != 4 or not c12.membership(witness)):
        raise PostconditionFailed(f"Weight-4 witness {witness.tolist()} is not a weight-4 codeword of C_{{1,2}}")
    status = "found" if witness is not None else "inconclusive"
    logger.info("Strictness at (p, m) = (%d, %d): proper=%s, codim=%d, witness %s", p, m, proper, codim, status)
    return StrictnessReport(
        p=p, m=m, proper=proper, dim_c12=c12.dimension, dim_d=subcode.dimension,
        codim=codim, codim_expected=codim_expected, codim_matches=codim_matches, status=status,
        witness=None if witness is None else [int(v) for v in witness], failing_exponent=failing,
        passed=proper and (codim_matches or not galois.is_prime(m)),
    )


def verify_dimension_claims(p: int, m: int) -> DimensionClaimsReport:
    """Coset facts behind dim D = p^m - 1 - m(m+3)/2 for prime m, checked directly."""
    if not galois.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if not galois.is_prime(m):
        raise HypothesisViolated(f"The dimension formula needs prime m, got m={m}")
    _require_subcode_hypothesis(p, m)
    n = p**m - 1
    base = cyclotomic_coset(1, p, n) | cyclotomic_coset(2, p, n)
    claims = {p**r + 1: cyclotomic_coset(p**r + 1, p, n) for r in range(1, (m - 1) // 2 + 1)}
    sizes_ok = all(len(c) == m for c in claims.values())
    distinct = len(set(claims.values())) == len(claims)
    disjoint = all(not (c & base) for c in claims.values())
    mirror = all(
        cyclotomic_coset(p**r + 1, p, n) == cyclotomic_coset(p ** (m - r) + 1, p, n) for r in range(1, m)
    )
    dim_c12 = n - len(base)
    dim_d = n - len(base.union(*claims.values()))
    formula = n - m * (m + 3) // 2
    holds = dim_d == formula
    return DimensionClaimsReport(
        p=p, m=m, coset_sizes={e: len(c) for e, c in claims.items()}, sizes_ok=sizes_ok,
        distinct=distinct, disjoint_from_base=disjoint, mirror_identity=mirror,
        dim_c12=dim_c12, dim_d=dim_d, formula_dim=formula, formula_holds=holds,
        passed=sizes_ok and distinct and disjoint and mirror and holds and dim_c12 == n - 2 * m,
    )


def bch_min_distance(spec: CyclicCodeSpec, search_budget: int = SEARCH_BUDGET) -> int:
    """Smallest w with a weight-w codeword, found by the cyclic support search."""
    if spec.dimension == 0:
        raise InputError(f"{spec.label()} has no nonzero codewords")
    code = spec.code
    for w in range(1, spec.n + 1):
        cost = search_cost(spec.n, spec.p, w, cyclic=True)
        if cost > search_budget:
            raise SearchBudgetExceeded(f"Weight-{w} search on {spec.label()} needs {cost} steps")
        if any(len(chunk) for chunk in iter_normalised_words(code, w)):
            return w
    raise PostconditionFailed(f"{spec.label()} has positive dimension but no codeword was found")


def bch_fcc_capability(p: int, m: int, modulus=None, primitive=None,
                       search_budget: int = SEARCH_BUDGET) -> BchCapabilityReport:
    """Cosets of D in C_{1,2}: at most p^codim function values, preimages multiples of |D|."""
    subcode = bch_subcode(p, m, modulus, primitive)
    c12 = bch_create(p, m, (1, 2), modulus, primitive)
    d_d = bch_min_distance(c12, search_budget)
    codim = c12.dimension - subcode.dimension
    return BchCapabilityReport(
        p=p, m=m, n=c12.n, dim_c12=c12.dimension, dim_d=subcode.dimension, codim=codim,
        coset_count=p**codim, subcode_size_exponent=subcode.dimension, d_d=d_d, d_f=d_d + 1,
    )


def bch_summary(spec: CyclicCodeSpec) -> dict:
    """Plain description of a cyclic code for reports."""
    cosets = sorted({min(c): sorted(c) for c in (cyclotomic_coset(e, spec.p, spec.n) for e in spec.reps)}.items())
    return {
        "p": spec.p, "m": spec.m, "n": spec.n, "dimension": spec.dimension,
        "base_exponents": list(spec.base_exponents), "cosets": {str(k): v for k, v in cosets},
        "generator_poly": list(spec.generator_poly), "modulus": list(spec.field.modulus or ()),
        "alpha": spec.field.alpha,
    }
