"""Block codes over GF(q): linear codes from generator matrices and explicit codeword lists.

Vectors and matrices are stored as plain int64 arrays holding galois integer representations;
they are wrapped into the field's FieldArray class only for arithmetic. Canonical codeword
order throughout is lexicographic on (support, nonzero coefficients).
"""

import itertools
import json
import logging
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path

import galois
import numpy as np

from src.config import COSET_CAP, ENUM_BUDGET, PAIR_BUDGET, SEARCH_BUDGET
from src.errors import (
    BudgetExceeded,
    InputError,
    LengthMismatch,
    NotASubcode,
    ParseError,
    RankZero,
    SearchBudgetExceeded,
)
from src.field import FieldSpec, field_from_json, field_to_json, to_ints, values_from_json, values_to_json

logger = logging.getLogger(__name__)

PREFIX_CHUNK = 4096
ENUM_CHUNK = 1 << 15


@dataclass(frozen=True, eq=False)
class Code:
    field: FieldSpec
    n: int
    kind: str  # "linear" | "explicit"
    generator: np.ndarray | None = None  # k x n
    codewords: np.ndarray | None = None  # M x n
    cyclic: bool = False
    parity_check: np.ndarray | None = None

    @property
    def is_linear(self) -> bool:
        return self.kind == "linear"

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def k(self) -> int:
        if not self.is_linear:
            raise InputError("Dimension is only defined for linear codes")
        return int(self.generator.shape[0])

    @property
    def size(self) -> int:
        return self.q**self.k if self.is_linear else int(self.codewords.shape[0])

    @cached_property
    def G(self) -> galois.FieldArray:
        return self.field.array(self.generator)

    @cached_property
    def H(self) -> galois.FieldArray:
        """Parity-check matrix: supplied one, else the null space of the generator."""
        if self.parity_check is not None:
            return self.field.array(self.parity_check)
        if self.k == 0:
            return self.field.gf.Identity(self.n)
        return self.G.null_space()

    def label(self) -> str:
        if self.is_linear:
            return f"[{self.n}, {self.k}]_{self.q}"
        return f"({self.n}, {self.size})_{self.q}"


@dataclass
class WeightDistribution:
    counts: dict[int, int]
    w_max: int | None = None

    def a(self, w: int) -> int:
        if self.w_max is not None and w > self.w_max:
            raise InputError(f"Weight {w} lies above the truncation point {self.w_max}")
        return self.counts.get(w, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass
class CosetPartition:
    parent: Code
    subcode: Code
    subcode_rref: np.ndarray
    subcode_pivots: list[int]
    complement: np.ndarray  # RREF rows spanning parent modulo subcode
    coset_size: int
    count: int
    representatives: np.ndarray | None  # None when count exceeds the materialisation cap

    @property
    def codim(self) -> int:
        return int(self.complement.shape[0])


# --- Linear algebra helpers ---

def rref(spec: FieldSpec, rows) -> tuple[np.ndarray, list[int]]:
    """Nonzero rows of the reduced row echelon form and their pivot columns."""
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        return rows.reshape(0, rows.shape[-1] if rows.ndim == 2 else 0), []
    reduced = to_ints(spec.array(rows).row_reduce())
    reduced = reduced[np.any(reduced != 0, axis=1)]
    pivots = [int(np.flatnonzero(row)[0]) for row in reduced]
    return reduced, pivots


def rank(spec: FieldSpec, rows) -> int:
    rows = np.asarray(rows, dtype=np.int64)
    if rows.size == 0:
        return 0
    return int(np.linalg.matrix_rank(spec.array(rows)))


def independent_rows(spec: FieldSpec, vectors) -> list[int]:
    """Indices of a greedy maximal independent subset, scanning vectors in the given order."""
    gf = spec.gf
    basis: list[tuple[int, galois.FieldArray]] = []  # (pivot, row normalised to 1 at pivot)
    chosen = []
    for idx, vec in enumerate(np.asarray(vectors, dtype=np.int64)):
        residue = gf(vec)
        for pivot, row in basis:
            if residue[pivot] != 0:
                residue = residue - residue[pivot] * row
        nonzero = np.flatnonzero(residue)
        if nonzero.size == 0:
            continue
        pivot = int(nonzero[0])
        residue = residue / residue[pivot]
        basis = [(p, r - r[pivot] * residue) for p, r in basis]
        basis.append((pivot, residue))
        chosen.append(idx)
    return chosen


def message_grid(q: int, k: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Messages with indices in [start, stop) as digit rows, first coordinate most significant."""
    stop = q**k if stop is None else stop
    idx = np.arange(start, stop, dtype=np.int64)
    if k == 0:
        return np.zeros((idx.size, 0), dtype=np.int64)
    powers = q ** np.arange(k - 1, -1, -1, dtype=np.int64)
    return (idx[:, None] // powers) % q


def message_index(q: int, message) -> int:
    index = 0
    for digit in message:
        index = index * q + int(digit)
    return index


def encode_messages(code: Code, messages) -> np.ndarray:
    messages = np.asarray(messages, dtype=np.int64)
    if code.k == 0:
        return np.zeros((messages.shape[0], code.n), dtype=np.int64)
    return to_ints(code.field.array(messages) @ code.G)


def weights(vectors: np.ndarray) -> np.ndarray:
    return np.count_nonzero(vectors, axis=-1)


def canonical_key(vector) -> tuple:
    support = tuple(int(i) for i in np.flatnonzero(vector))
    return support, tuple(int(vector[i]) for i in support)


def canonical_sort(vectors: np.ndarray) -> np.ndarray:
    if len(vectors) == 0:
        return vectors
    order = sorted(range(len(vectors)), key=lambda i: canonical_key(vectors[i]))
    return vectors[order]


# --- Construction ---

def code_from_generator(spec: FieldSpec, rows, cyclic: bool = False, parity_check=None) -> Code:
    """Linear code spanned by rows; keeps the caller's rows when they are already independent."""
    rows = [list(r) for r in rows]
    if not rows:
        raise InputError("Generator needs at least one row")
    if len({len(r) for r in rows}) != 1:
        raise LengthMismatch("Generator rows have different lengths")
    matrix = np.asarray(rows, dtype=np.int64)
    r = rank(spec, matrix)
    if r == 0:
        raise RankZero("Every generator row is zero")
    if r < matrix.shape[0]:
        logger.debug("Generator has %d rows but rank %d, using its RREF", matrix.shape[0], r)
        matrix, _ = rref(spec, matrix)
    return Code(field=spec, n=matrix.shape[1], kind="linear", generator=matrix, cyclic=cyclic,
                parity_check=None if parity_check is None else np.asarray(parity_check, dtype=np.int64))


def code_from_codewords(spec: FieldSpec, codewords) -> Code:
    words = np.asarray(codewords, dtype=np.int64)
    if words.ndim != 2 or words.shape[0] == 0:
        raise InputError("An explicit code needs a nonempty list of equal-length codewords")
    if np.any(words < 0) or np.any(words >= spec.order):
        raise InputError(f"Codeword entries must lie in {spec.label()}")
    if np.unique(words, axis=0).shape[0] != words.shape[0]:
        raise InputError("Explicit codewords must be distinct")
    return Code(field=spec, n=words.shape[1], kind="explicit", codewords=words)


def span(spec: FieldSpec, vectors, n: int | None = None) -> Code:
    """Linear span as a Code; the empty set (or all-zero set) spans the zero code."""
    vectors = np.asarray(vectors, dtype=np.int64)
    if vectors.size == 0:
        if n is None:
            raise InputError("Length is required to span an empty set")
        return Code(field=spec, n=n, kind="linear", generator=np.zeros((0, n), dtype=np.int64))
    basis, _ = rref(spec, vectors)
    return Code(field=spec, n=vectors.shape[1], kind="linear", generator=basis)


# --- Enumeration ---

def iter_codewords(code: Code, budget: int = ENUM_BUDGET, chunk: int = ENUM_CHUNK):
    """Yield all codewords in message order, chunk by chunk."""
    if code.size > budget:
        raise BudgetExceeded(f"Enumerating {code.label()} needs {code.size} codewords (budget {budget})")
    if not code.is_linear:
        yield code.codewords
        return
    for start in range(0, code.size, chunk):
        msgs = message_grid(code.q, code.k, start, min(start + chunk, code.size))
        yield encode_messages(code, msgs)


def enumerate_codewords(code: Code, budget: int = ENUM_BUDGET) -> np.ndarray:
    return np.concatenate(list(iter_codewords(code, budget)), axis=0)


def _pairwise_extreme(words: np.ndarray, largest: bool) -> int:
    best = None
    for i in range(len(words) - 1):
        dist = np.count_nonzero(words[i + 1:] != words[i], axis=1)
        value = int(dist.max() if largest else dist.min())
        best = value if best is None else (max(best, value) if largest else min(best, value))
    return best


def min_distance(code: Code, budget: int = ENUM_BUDGET, w_max: int | None = None,
                 search_budget: int = SEARCH_BUDGET, pair_budget: int = PAIR_BUDGET) -> int:
    """Exact minimum distance.

    Linear codes: minimum nonzero weight by enumeration, or by an increasing-weight
    support search up to w_max once q^k exceeds the enumeration budget.
    """
    if code.size < 2:
        raise InputError("Minimum distance needs at least two codewords")
    if not code.is_linear:
        if code.size**2 > pair_budget:
            raise BudgetExceeded(f"{code.size} codewords exceed the pairwise budget")
        return _pairwise_extreme(code.codewords, largest=False)
    if code.size <= budget:
        best = code.n
        for chunk in iter_codewords(code, budget):
            w = weights(chunk)
            w = w[w > 0]
            if w.size:
                best = min(best, int(w.min()))
        return best
    if w_max is None:
        raise BudgetExceeded(
            f"{code.label()} has {code.size} codewords; pass a weight cap to use the support search"
        )
    for w in range(1, w_max + 1):
        if len(codewords_of_weight(code, w, search_budget)):
            return w
    raise BudgetExceeded(f"No nonzero codeword of weight <= {w_max} in {code.label()}")


def max_distance(code: Code, budget: int = ENUM_BUDGET) -> int:
    """Largest distance between two codewords (largest weight for linear codes)."""
    if code.size < 2:
        raise InputError("Maximum distance needs at least two codewords")
    if not code.is_linear:
        return _pairwise_extreme(code.codewords, largest=True)
    return max(int(weights(chunk).max()) for chunk in iter_codewords(code, budget))


def weight_distribution(code: Code, w_max: int | None = None, budget: int = ENUM_BUDGET,
                        search_budget: int = SEARCH_BUDGET) -> WeightDistribution:
    top = code.n if w_max is None else min(w_max, code.n)
    if code.size <= budget:
        counts = np.zeros(code.n + 1, dtype=np.int64)
        for chunk in iter_codewords(code, budget):
            counts += np.bincount(weights(chunk), minlength=code.n + 1)
        return WeightDistribution({w: int(counts[w]) for w in range(top + 1)}, w_max)
    if w_max is None or not code.is_linear:
        raise BudgetExceeded(f"{code.label()} is too large to enumerate; pass w_max")
    counts = {0: 1}
    for w in range(1, top + 1):
        counts[w] = len(codewords_of_weight(code, w, search_budget))
    return WeightDistribution(counts, w_max)


# --- Low-weight search ---

def search_cost(n: int, q: int, w: int, cyclic: bool) -> int:
    if w == 1:
        return n
    if cyclic:
        return math.comb(n - 1, w - 2) * (q - 1) ** (w - 2)
    return math.comb(n, w - 1) * (q - 1) ** (w - 2)


def _syndrome_keys(q: int, vectors: np.ndarray) -> np.ndarray:
    r = vectors.shape[1]
    if q**r < 2**62:
        radix = np.array([q**i for i in range(r)], dtype=np.int64)
        return vectors @ radix
    return np.array([row.tobytes() for row in vectors], dtype=object)


def vectors_of_weight(n: int, q: int, w: int) -> np.ndarray:
    """Every vector of GF(q)^n with exactly w nonzero entries, canonical order."""
    rows = []
    for support in itertools.combinations(range(n), w):
        for coeffs in itertools.product(range(1, q), repeat=w):
            word = np.zeros(n, dtype=np.int64)
            word[list(support)] = coeffs
            rows.append(word)
    return np.asarray(rows, dtype=np.int64).reshape(-1, n)


def scalar_multiples(spec: FieldSpec, words: np.ndarray) -> np.ndarray:
    gf = spec.gf
    arr = gf(words)
    return np.concatenate([to_ints(gf(c) * arr) for c in range(1, spec.order)], axis=0)


def _normalise(spec: FieldSpec, word: np.ndarray) -> tuple[int, ...]:
    gf = spec.gf
    arr = gf(word)
    lead = arr[np.flatnonzero(word)[0]]
    return tuple(int(x) for x in to_ints(arr / lead))


def codewords_of_weight(code: Code, w: int, budget: int = SEARCH_BUDGET) -> np.ndarray:
    """All codewords of weight exactly w, canonical order.

    Solves the parity checks on candidate supports: a (w-1)-position prefix with leading
    coefficient 1 fixes a syndrome, and the last position/coefficient is read off a table of
    scaled parity-check columns. Cyclic codes fix position 0 and close under shifts.
    """
    if not code.is_linear:
        raise InputError("Support search needs a linear code")
    n, q, spec = code.n, code.q, code.field
    if w <= 0 or w > n:
        return np.zeros((0, n), dtype=np.int64)
    H = code.H
    r = H.shape[0]
    cost = search_cost(n, q, w, code.cyclic)
    if r == 0:
        cost = math.comb(n, w) * (q - 1) ** w
    if cost > budget:
        raise SearchBudgetExceeded(f"Weight-{w} search on {code.label()} needs {cost} steps (budget {budget})")
    if r == 0:
        return canonical_sort(vectors_of_weight(n, q, w))

    found = [chunk for chunk in iter_normalised_words(code, w) if len(chunk)]
    if not found:
        return np.zeros((0, n), dtype=np.int64)
    words = np.concatenate(found, axis=0)
    if code.cyclic and w > 1:
        orbit = {_normalise(spec, np.roll(word, shift)) for word in words for shift in range(n)}
        words = np.asarray(sorted(orbit), dtype=np.int64)
    return canonical_sort(scalar_multiples(spec, words))


def iter_normalised_words(code: Code, w: int):
    """Yield, chunk by chunk, weight-w codewords whose first nonzero coefficient is 1.

    Cyclic codes only yield words with position 0 in the support (one per shift orbit at
    least); callers close under shifts themselves. Budget checks are the caller's job.
    """
    n, q, spec = code.n, code.q, code.field
    H = code.H
    r = H.shape[0]
    columns = to_ints(H.T)  # n x r
    if w == 1:
        zero_cols = np.flatnonzero(~np.any(columns != 0, axis=1))
        words = np.zeros((len(zero_cols), n), dtype=np.int64)
        words[np.arange(len(zero_cols)), zero_cols] = 1
        yield words
        return

    gf = spec.gf
    HT = gf(columns)
    scales = np.arange(1, q, dtype=np.int64)
    scaled = to_ints(gf(scales)[:, None, None] * HT[None, :, :])  # (q-1) x n x r
    table: dict = {}
    table_keys = _syndrome_keys(q, scaled.reshape(-1, r))
    for flat, key in enumerate(table_keys):
        c_idx, j = divmod(flat, n)
        table.setdefault(key, []).append((j, int(scales[c_idx])))
    key_set = np.array(list(table.keys()), dtype=table_keys.dtype)

    grid = np.array([(1,) + tail for tail in itertools.product(range(1, q), repeat=w - 2)], dtype=np.int64)
    grid_gf = gf(grid)

    if code.cyclic:
        prefixes = ((0,) + rest for rest in itertools.combinations(range(1, n), w - 2))
    else:
        prefixes = itertools.combinations(range(n), w - 1)

    processed = hits_total = 0
    while True:
        block = list(itertools.islice(prefixes, PREFIX_CHUNK))
        if not block:
            break
        found = []
        P = np.asarray(block, dtype=np.int64)
        syndromes = grid_gf[None, :, 0, None] * HT[P[:, 0]][:, None, :]
        for t in range(1, w - 1):
            syndromes = syndromes + grid_gf[None, :, t, None] * HT[P[:, t]][:, None, :]
        targets = to_ints(-syndromes).reshape(-1, r)
        keys = _syndrome_keys(q, targets)
        if keys.dtype == object:
            hits = np.fromiter((k in table for k in keys), dtype=bool, count=len(keys))
        else:
            hits = np.isin(keys, key_set)
        for flat in np.flatnonzero(hits):
            p_idx, g_idx = divmod(int(flat), len(grid))
            prefix = P[p_idx]
            for j, c in table[keys[flat]]:
                if j > prefix[-1]:
                    word = np.zeros(n, dtype=np.int64)
                    word[prefix] = grid[g_idx]
                    word[j] = c
                    found.append(word)
        processed += len(block)
        hits_total += len(found)
        yield np.asarray(found, dtype=np.int64).reshape(-1, n)
    logger.debug("weight-%d search on %s: %d prefixes, %d normalised hits", w, code.label(), processed, hits_total)


def low_weight_codewords(code: Code, w_max: int, budget: int = SEARCH_BUDGET) -> np.ndarray:
    """Nonzero codewords of weight <= w_max (the set S_w_max), canonical order."""
    n = code.n
    if w_max <= 0:
        return np.zeros((0, n), dtype=np.int64)
    total = sum(search_cost(n, code.q, w, code.cyclic) for w in range(1, min(w_max, n) + 1))
    if total > budget:
        raise SearchBudgetExceeded(f"Search up to weight {w_max} on {code.label()} needs {total} steps")
    parts = [codewords_of_weight(code, w, budget) for w in range(1, min(w_max, n) + 1)]
    return canonical_sort(np.concatenate(parts, axis=0))


def subcode_span_dim(code: Code, w_max: int, budget: int = SEARCH_BUDGET) -> int:
    """Dimension of the span of all nonzero codewords of weight <= w_max."""
    return rank(code.field, low_weight_codewords(code, w_max, budget))


# --- Membership and cosets ---

def membership(code: Code, vector) -> bool:
    vector = np.asarray(vector, dtype=np.int64)
    if vector.shape != (code.n,):
        raise LengthMismatch(f"Vector of length {vector.size} tested against a length-{code.n} code")
    if not code.is_linear:
        return bool(np.any(np.all(code.codewords == vector, axis=1)))
    if code.H.shape[0] == 0:
        return True
    return not np.any(code.H @ code.field.array(vector))


def complete_basis(code: Code, vectors) -> np.ndarray:
    """Rows completing independent codewords `vectors` to a basis of code.

    The parent generator is reduced modulo the RREF of vectors; the nonzero RREF rows of the
    residues (smallest pivot first) form the completion.
    """
    spec = code.field
    vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, code.n)
    base, pivots = rref(spec, vectors)
    if len(base) != len(vectors):
        raise InputError("Vectors to complete must be linearly independent")
    gf = spec.gf
    residues = gf(code.generator.copy())
    for row, pivot in zip(gf(base), pivots):
        residues = residues - residues[:, pivot][:, None] * row[None, :]
    completion, _ = rref(spec, to_ints(residues))
    if len(completion) + len(base) != code.k:
        raise NotASubcode("Vectors do not lie in the code")
    return completion


def coset_partition(parent: Code, subcode: Code, cap: int = COSET_CAP) -> CosetPartition:
    """Cosets of subcode in parent, representatives enumerated over a complement basis."""
    if parent.field != subcode.field or parent.n != subcode.n:
        raise NotASubcode("Subcode and parent live in different ambient spaces")
    for row in subcode.generator:
        if not membership(parent, row):
            raise NotASubcode(f"Generator row {row.tolist()} is not a codeword of the parent")
    complement = complete_basis(parent, subcode.generator)
    codim = complement.shape[0]
    count = parent.q**codim
    reps = None
    if count <= cap:
        msgs = message_grid(parent.q, codim)
        reps = to_ints(parent.field.array(msgs) @ parent.field.array(complement)) if codim else \
            np.zeros((1, parent.n), dtype=np.int64)
    else:
        logger.info("%d cosets exceed the materialisation cap %d; keeping the complement basis only", count, cap)
    sub_rref, sub_pivots = rref(subcode.field, subcode.generator)
    return CosetPartition(
        parent=parent, subcode=subcode, subcode_rref=sub_rref, subcode_pivots=sub_pivots,
        complement=complement, coset_size=subcode.size, count=count, representatives=reps,
    )


def coset_coordinates(partition: CosetPartition, vector) -> np.ndarray:
    """Complement coordinates u with vector - u . complement in the subcode."""
    spec = partition.parent.field
    gf = spec.gf
    residue = gf(np.asarray(vector, dtype=np.int64))
    for row, pivot in zip(gf(partition.subcode_rref), partition.subcode_pivots):
        residue = residue - residue[pivot] * row
    comp_pivots = [int(np.flatnonzero(row)[0]) for row in partition.complement]
    return to_ints(residue)[comp_pivots]


def coset_index(partition: CosetPartition, codeword) -> int:
    """Index of the coset containing codeword, matching the representatives' order."""
    if not membership(partition.parent, codeword):
        raise InputError("Vector is not a codeword of the parent code")
    return message_index(partition.parent.q, coset_coordinates(partition, codeword))


# --- JSON ---

def code_to_json(code: Code) -> dict:
    data = {"field": field_to_json(code.field), "n": code.n, "kind": code.kind}
    if code.is_linear:
        data["generator"] = values_to_json(code.field, code.generator)
        if code.cyclic:
            data["cyclic"] = True
        if code.parity_check is not None:
            data["parity_check"] = values_to_json(code.field, code.parity_check)
    else:
        data["codewords"] = values_to_json(code.field, code.codewords)
    return data


def code_from_json(data: dict) -> Code:
    try:
        spec = field_from_json(data["field"])
        kind = data.get("kind", "linear")
        if kind == "linear":
            rows = values_from_json(spec, data["generator"])
            parity = data.get("parity_check")
            code = code_from_generator(spec, rows.tolist(), cyclic=bool(data.get("cyclic", False)),
                                       parity_check=None if parity is None else values_from_json(spec, parity))
        elif kind == "explicit":
            code = code_from_codewords(spec, values_from_json(spec, data["codewords"]))
        else:
            raise ParseError(f"Unknown code kind {kind!r}")
    except (KeyError, TypeError) as exc:
        raise ParseError(f"Malformed code descriptor: missing or invalid {exc}") from exc
    if "n" in data and int(data["n"]) != code.n:
        raise LengthMismatch(f"Descriptor declares n={data['n']} but rows have length {code.n}")
    return code


def save_code(code: Code, path: str | Path) -> None:
    """Save a code descriptor to JSON."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(code_to_json(code), f, indent=2, ensure_ascii=False)


def read_descriptor(path: str | Path) -> dict:
    """Read a JSON descriptor; unreadable files are InputError, bad JSON is ParseError."""
    try:
        with open(path) as f:
            return json.load(f)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc


def load_code(path: str | Path) -> Code:
    """Load a code descriptor from JSON."""
    return code_from_json(read_descriptor(path))
