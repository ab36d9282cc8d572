"""Function-correcting codes with data protection.

An (f : d_d, d_f) encoding keeps every pair of codewords at distance >= d_d and every pair whose
messages have different function values at distance >= d_f. Encodings are built by grouping the
connected components of the distance graph G_{d_f - 1} so that each group has exactly the size of
one preimage of f. For linear codes every component is a coset of <S_{d_f - 1}>, and linear
functions are carried by cosets of a subcode that contains it (the structured path).
"""

import itertools
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from src.codes import (
    Code,
    canonical_sort,
    complete_basis,
    low_weight_codewords,
    membership,
    message_grid,
    min_distance,
    rank,
    read_descriptor,
    rref,
    span,
    vectors_of_weight,
)
from src.config import COSET_CAP, ENUM_BUDGET, GROUPING_NODE_BUDGET, PAIR_BUDGET, SEARCH_BUDGET
from src.distgraph import components
from src.errors import (
    Ambiguous,
    BeyondRadius,
    BudgetExceeded,
    FieldMismatch,
    InfeasibleReport,
    InputError,
    LengthMismatch,
    ParseError,
    StructuredPathUnavailable,
)
from src.field import FieldSpec, to_ints, values_from_json, values_to_json
from src.models import ChannelReport, FeasibilityReport, LinearFastPath, VerificationReport

logger = logging.getLogger(__name__)

FUNCTION_KINDS = ("table", "linear_map", "projection")
VERIFY_MODES = ("exhaustive", "structural", "sampled")
TRIAL_CHUNK = 1024
MAX_DETAILS = 10


# --- Functions on GF(q)^k ---

@dataclass
class FunctionSpec:
    kind: str
    field: FieldSpec
    k: int
    table: np.ndarray | None = None  # q^k x l values in message order
    matrix: np.ndarray | None = None  # k x l, f(u) = uA
    coords: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.kind not in FUNCTION_KINDS:
            raise InputError(f"Unknown function kind {self.kind!r}")
        if self.kind == "projection":
            if not self.coords or any(not 0 <= c < self.k for c in self.coords) or len(set(self.coords)) != len(self.coords):
                raise InputError(f"Projection coordinates {self.coords} must be distinct and lie in [0, {self.k})")
            self.matrix = np.zeros((self.k, len(self.coords)), dtype=np.int64)
            self.matrix[list(self.coords), np.arange(len(self.coords))] = 1

    @property
    def q(self) -> int:
        return self.field.order

    @property
    def domain_size(self) -> int:
        return self.q**self.k

    @property
    def is_linear(self) -> bool:
        return self.kind != "table"

    @property
    def rank(self) -> int:
        if not self.is_linear:
            raise InputError("Only linear functions have a rank")
        return rank(self.field, self.matrix)

    def values(self, messages) -> np.ndarray:
        messages = np.atleast_2d(np.asarray(messages, dtype=np.int64))
        if self.kind == "table":
            powers = self.q ** np.arange(self.k - 1, -1, -1, dtype=np.int64)
            return self.table[messages @ powers]
        return to_ints(self.field.array(messages) @ self.field.array(self.matrix))

    def image(self, cap: int = COSET_CAP) -> tuple[int, list[int] | None, dict[int, int]]:
        """(E, per-value preimage sizes in image order or None, size -> multiplicity)."""
        if self.kind == "table":
            _, counts = np.unique(self.table, axis=0, return_counts=True)
            sizes = [int(c) for c in counts]
            return len(sizes), sizes, _size_counts(sizes)
        r = self.rank
        count, size = self.q**r, self.q ** (self.k - r)
        listed = [size] * count if count <= cap else None
        return count, listed, {size: count}

    def image_values(self) -> np.ndarray:
        """Distinct values, lexicographic order."""
        if self.kind == "table":
            return np.unique(self.table, axis=0)
        basis, _ = rref(self.field, self.matrix.T)
        r = len(basis)
        if self.q**r > COSET_CAP:
            raise BudgetExceeded(f"Image of size {self.q**r} is too large to list")
        values = to_ints(self.field.array(message_grid(self.q, r)) @ self.field.array(basis)) if r else \
            np.zeros((1, self.matrix.shape[1]), dtype=np.int64)
        return np.unique(values, axis=0)


def _size_counts(sizes) -> dict[int, int]:
    counts: dict[int, int] = {}
    for s in sizes:
        counts[int(s)] = counts.get(int(s), 0) + 1
    return dict(sorted(counts.items()))


def function_from_json(data: dict, spec: FieldSpec, k: int | None = None) -> FunctionSpec:
    """Function descriptor: {"kind": "table", "pairs": [[message, value], ...]},
    {"kind": "linear_map", "matrix": [...]} or {"kind": "projection", "k": k, "coords": [...]}."""
    try:
        kind = data["kind"]
        if kind == "table":
            pairs = data["pairs"]
            messages = np.asarray([p[0] for p in pairs], dtype=np.int64)
            values = np.asarray([p[1] if isinstance(p[1], list) else [p[1]] for p in pairs], dtype=np.int64)
            k = messages.shape[1] if k is None else k
            if messages.shape[1] != k:
                raise LengthMismatch(f"Table messages have length {messages.shape[1]}, expected {k}")
            q = spec.order
            if np.any(messages < 0) or np.any(messages >= q):
                raise InputError(f"Table messages must lie in GF({q})^{k}")
            index = messages @ (q ** np.arange(k - 1, -1, -1, dtype=np.int64))
            if len(index) != q**k or len(np.unique(index)) != q**k:
                raise InputError(f"A table function must list each of the {q**k} messages exactly once")
            table = np.zeros_like(values)
            table[index] = values
            return FunctionSpec(kind="table", field=spec, k=k, table=table)
        if kind == "linear_map":
            matrix = values_from_json(spec, data["matrix"])
            if matrix.ndim != 2:
                raise ParseError("A linear map needs a k x l matrix")
            if k is not None and matrix.shape[0] != k:
                raise LengthMismatch(f"Linear map has {matrix.shape[0]} rows, expected k={k}")
            return FunctionSpec(kind="linear_map", field=spec, k=matrix.shape[0], matrix=matrix)
        if kind == "projection":
            k = data.get("k", k)
            if k is None:
                raise ParseError("A projection needs the message length k")
            return FunctionSpec(kind="projection", field=spec, k=int(k), coords=tuple(int(c) for c in data["coords"]))
    except (KeyError, TypeError, IndexError) as exc:
        raise ParseError(f"Malformed function descriptor: {exc}") from exc
    raise ParseError(f"Unknown function kind {data.get('kind')!r}")


def function_to_json(f: FunctionSpec) -> dict:
    if f.kind == "table":
        messages = message_grid(f.q, f.k)
        return {"kind": "table", "k": f.k,
                "pairs": [[m.tolist(), v.tolist()] for m, v in zip(messages, f.table)]}
    if f.kind == "projection":
        return {"kind": "projection", "k": f.k, "coords": list(f.coords)}
    return {"kind": "linear_map", "matrix": values_to_json(f.field, f.matrix)}


def load_function(path: str | Path, spec: FieldSpec, k: int | None = None) -> FunctionSpec:
    return function_from_json(read_descriptor(path), spec, k)


# --- Feasibility ---

def group_components(sizes, targets, node_budget: int = GROUPING_NODE_BUDGET) -> list[list[int]] | None:
    """Partition component indices into groups whose sizes sum exactly to each target.

    Depth-first over components sorted by decreasing size; a value is tried only once per
    distinct remaining capacity, and failed (depth, capacities) states are memoised.
    Returns None when no grouping exists; raises BudgetExceeded after node_budget nodes.
    """
    sizes = [int(s) for s in sizes]
    remaining = [int(t) for t in targets]
    if sum(sizes) != sum(remaining):
        return None
    order = sorted(range(len(sizes)), key=lambda c: (-sizes[c], c))
    if not order:
        return [[] for _ in remaining]

    def candidates(pos: int) -> list[int]:
        size, seen, out = sizes[order[pos]], set(), []
        for v, cap in enumerate(remaining):
            if cap >= size and cap not in seen:
                seen.add(cap)
                out.append(v)
        return out

    assignment = [-1] * len(order)
    choices = [iter(candidates(0))] + [None] * (len(order) - 1)
    failed = set()
    nodes, pos = 0, 0
    while pos >= 0:
        nodes += 1
        if nodes > node_budget:
            raise BudgetExceeded(f"Grouping search exceeded {node_budget} nodes")
        v = next(choices[pos], None)
        if assignment[pos] >= 0:
            remaining[assignment[pos]] += sizes[order[pos]]
            assignment[pos] = -1
        if v is None:
            failed.add((pos, tuple(sorted(remaining))))
            pos -= 1
            continue
        remaining[v] -= sizes[order[pos]]
        assignment[pos] = v
        if pos + 1 == len(order):
            groups = [[] for _ in remaining]
            for p, value in enumerate(assignment):
                groups[value].append(order[p])
            return [sorted(g) for g in groups]
        if (pos + 1, tuple(sorted(remaining))) in failed:
            continue
        pos += 1
        choices[pos] = iter(candidates(pos))
    return None


def _check_shapes(code: Code, f: FunctionSpec, d_d: int, d_f: int) -> None:
    if f.field != code.field:
        raise FieldMismatch(f"Function over {f.field.label()} but code over {code.field.label()}")
    if f.domain_size != code.size:
        raise LengthMismatch(f"Function domain has {f.domain_size} messages but the code has {code.size} codewords")
    if d_d < 1 or d_f < d_d:
        raise InputError(f"Need 1 <= d_d <= d_f, got d_d={d_d}, d_f={d_f}")


def check_feasibility(code: Code, f: FunctionSpec, d_d: int, d_f: int, budget: int = ENUM_BUDGET,
                      search_budget: int = SEARCH_BUDGET, pair_budget: int = PAIR_BUDGET,
                      node_budget: int = GROUPING_NODE_BUDGET, cap: int = COSET_CAP) -> FeasibilityReport:
    """Existence conditions for an (f : d_d, d_f) encoding into code.

    The distance condition asks d_min = d_d; the grouping condition asks for a union of
    components of G_{d_f - 1} of exactly each preimage size. Linear codes use the equal-size
    shortcut: q^k / gamma >= E and gamma divides every preimage size. An infeasible grouping does
    not rule out every encoding; E larger than the component count (with d_min = d_d) does.
    """
    _check_shapes(code, f, d_d, d_f)
    d_min = min_distance(code, budget, w_max=code.n, search_budget=search_budget, pair_budget=pair_budget)
    image_size, listed, size_counts = f.image(cap)
    parts = components(code, d_f - 1, budget, search_budget, pair_budget, cap)
    linear = None
    grouping = None
    if parts.method == "cayley":
        gamma = parts.block_size
        enough = parts.block_count >= image_size
        divisible = all(size % gamma == 0 for size in size_counts)
        linear = LinearFastPath(gamma=gamma, component_count=parts.block_count,
                                enough_components=enough, preimages_divisible=divisible)
        status = "feasible" if enough and divisible else "infeasible"
        if status == "feasible" and listed is not None and parts.block_count <= cap:
            grouping, start = [], 0
            for size in listed:
                grouping.append(list(range(start, start + size // gamma)))
                start += size // gamma
    else:
        try:
            grouping = group_components(parts.block_sizes, listed, node_budget)
            status = "infeasible" if grouping is None else "feasible"
        except BudgetExceeded:
            logger.warning("Grouping search gave up after %d nodes", node_budget)
            status = "unknown"
    distance_matches = d_min == d_d
    logger.info("Feasibility (d_d=%d, d_f=%d) on %s: d_min=%d, %d components, E=%d, grouping %s",
                d_d, d_f, code.label(), d_min, parts.block_count, image_size, status)
    return FeasibilityReport(
        d_d=d_d, d_f=d_f, d_min=d_min, distance_matches=distance_matches, image_size=image_size,
        preimage_sizes=None if listed is None else [int(s) for s in listed],
        preimage_size_counts=size_counts, component_count=parts.block_count,
        component_sizes=list(parts.block_sizes), c2_status=status, grouping=grouping, linear=linear,
        component_bound=parts.block_count, excluded=distance_matches and image_size > parts.block_count,
        strict=d_f > d_d,
    )


# --- Encodings ---

@dataclass
class StructuredBasis:
    """Messages u = y M; codewords y [B_D; B_Q]; function value y_Q V."""

    message_basis: np.ndarray  # M, k x k; first k - r rows span the kernel of f
    subcode_rows: np.ndarray  # B_D, (k - r) x n; spans the subcode D'
    complement_rows: np.ndarray  # B_Q, r x n
    value_map: np.ndarray  # V, r x l
    message_inverse: np.ndarray
    info_set: list[int]  # columns where [B_D; B_Q] is invertible
    info_inverse: np.ndarray

    @property
    def rows(self) -> np.ndarray:
        return np.vstack([self.subcode_rows, self.complement_rows])


def _structured_basis(spec: FieldSpec, message_basis, subcode_rows, complement_rows, value_map) -> StructuredBasis:
    gf = spec.gf
    message_basis = np.asarray(message_basis, dtype=np.int64)
    k = message_basis.shape[0]
    subcode_rows = np.asarray(subcode_rows, dtype=np.int64)
    complement_rows = np.asarray(complement_rows, dtype=np.int64)
    rows = np.vstack([subcode_rows, complement_rows])
    if rows.shape[0] != k or rank(spec, rows) != k or rank(spec, message_basis) != k:
        raise StructuredPathUnavailable("Structured basis is not invertible")
    _, pivots = rref(spec, rows)
    return StructuredBasis(
        message_basis=message_basis,
        subcode_rows=subcode_rows,
        complement_rows=complement_rows,
        value_map=np.asarray(value_map, dtype=np.int64),
        message_inverse=to_ints(np.linalg.inv(gf(message_basis))),
        info_set=pivots,
        info_inverse=to_ints(np.linalg.inv(gf(rows[:, pivots]))),
    )


@dataclass
class FccEncoding:
    kind: str  # "table" | "structured"
    code: Code
    function: FunctionSpec
    d_d: int
    d_f: int
    codewords: np.ndarray | None = None  # table: codeword of each message, message order
    grouping: list[list[int]] | None = None
    basis: StructuredBasis | None = None
    syndromes: dict = field(default_factory=dict, repr=False)

    @property
    def strict(self) -> bool:
        return self.d_f > self.d_d

    def encode(self, messages) -> np.ndarray:
        messages = np.atleast_2d(np.asarray(messages, dtype=np.int64))
        if self.kind == "table":
            powers = self.code.q ** np.arange(self.function.k - 1, -1, -1, dtype=np.int64)
            return self.codewords[messages @ powers]
        gf = self.code.field.gf
        y = gf(messages) @ gf(self.basis.message_inverse)
        return to_ints(y @ gf(self.basis.rows))

    def coordinates(self, codewords) -> np.ndarray:
        """y with codeword = y [B_D; B_Q] (structured encodings)."""
        gf = self.code.field.gf
        words = np.atleast_2d(np.asarray(codewords, dtype=np.int64))
        return to_ints(gf(words[:, self.basis.info_set]) @ gf(self.basis.info_inverse))


def build_encoding(code: Code, f: FunctionSpec, report: FeasibilityReport, subcode: Code | None = None,
                   path: str = "auto", budget: int = ENUM_BUDGET, search_budget: int = SEARCH_BUDGET,
                   pair_budget: int = PAIR_BUDGET, cap: int = COSET_CAP) -> FccEncoding:
    """Encoding realising a feasible report.

    table: the i-th preimage (messages in lexicographic order) goes onto the i-th group of
    components (codewords in canonical order). structured: linear functions on linear codes,
    function values carried by the cosets of a subcode D' containing <S_{d_f - 1}> (or the given
    subcode).
    """
    if not report.feasible:
        raise InfeasibleReport(
            f"Report is not feasible (distance_matches={report.distance_matches}, grouping {report.c2_status})"
        )
    _check_shapes(code, f, report.d_d, report.d_f)
    if path == "auto":
        path = "structured" if f.is_linear and code.is_linear and (subcode is not None or code.size > budget) \
            else "table"
    if path == "structured":
        return _build_structured(code, f, report, subcode, search_budget)
    if path != "table":
        raise InputError(f"Unknown encoding path {path!r}")
    if report.grouping is None:
        raise StructuredPathUnavailable("Report carries no explicit grouping to tabulate")
    parts = components(code, report.d_f - 1, budget, search_budget, pair_budget, cap)
    if parts.blocks is None:
        raise BudgetExceeded(f"Components of {code.label()} are too large to tabulate")

    messages = message_grid(f.q, f.k)
    values = f.values(messages)
    image = f.image_values()
    codewords = np.zeros((len(messages), code.n), dtype=np.int64)
    for value, group in zip(image, report.grouping):
        members = np.flatnonzero(np.all(values == value, axis=1))
        words = canonical_sort(np.concatenate([parts.blocks[c] for c in group], axis=0))
        if len(words) != len(members):
            raise InfeasibleReport(f"Group {group} has {len(words)} codewords for {len(members)} messages")
        codewords[members] = words
    logger.info("Tabulated an (f : %d, %d) encoding on %s", report.d_d, report.d_f, code.label())
    return FccEncoding(kind="table", code=code, function=f, d_d=report.d_d, d_f=report.d_f,
                       codewords=codewords, grouping=report.grouping)


def _build_structured(code: Code, f: FunctionSpec, report: FeasibilityReport, subcode: Code | None,
                      search_budget: int) -> FccEncoding:
    if not (f.is_linear and code.is_linear):
        raise StructuredPathUnavailable("The structured path needs a linear function on a linear code")
    spec, k = code.field, code.k
    gf = spec.gf
    A = f.matrix
    r = f.rank
    if r == 0:
        kernel = np.eye(k, dtype=np.int64)
    else:
        kernel = to_ints(gf(A.T).null_space()).reshape(-1, k)
    full_space = Code(field=spec, n=k, kind="linear", generator=np.eye(k, dtype=np.int64))
    message_basis = np.vstack([kernel, complete_basis(full_space, kernel)])
    value_map = to_ints(gf(message_basis) @ gf(A))[k - r:]

    if subcode is None:
        low = low_weight_codewords(code, report.d_f - 1, search_budget)
        sub_rows, _ = rref(spec, low) if len(low) else (np.zeros((0, code.n), dtype=np.int64), [])
    else:
        if subcode.field != spec or subcode.n != code.n:
            raise StructuredPathUnavailable("Subcode lives in a different ambient space")
        sub_rows, _ = rref(spec, subcode.generator)
    s = len(sub_rows)
    if s > k - r:
        raise StructuredPathUnavailable(
            f"Subcode of dimension {s} leaves no room for {f.q}^{r} function values in dimension {k}"
        )
    extension = complete_basis(code, sub_rows)
    subcode_rows = np.vstack([sub_rows, extension[: k - r - s]]).reshape(-1, code.n)
    complement_rows = extension[k - r - s:]
    basis = _structured_basis(spec, message_basis, subcode_rows, complement_rows, value_map)
    logger.info("Structured (f : %d, %d) encoding on %s: dim D' = %d, %d function values",
                report.d_d, report.d_f, code.label(), k - r, f.q**r)
    return FccEncoding(kind="structured", code=code, function=f, d_d=report.d_d, d_f=report.d_f, basis=basis)


def encoding_from_assignment(code: Code, f: FunctionSpec, d_d: int, d_f: int, pairs) -> FccEncoding:
    """Table encoding from explicit (message, codeword) pairs."""
    _check_shapes(code, f, d_d, d_f)
    messages = np.asarray([p[0] for p in pairs], dtype=np.int64)
    words = np.asarray([p[1] for p in pairs], dtype=np.int64)
    if messages.ndim != 2 or messages.shape[1] != f.k or words.ndim != 2 or words.shape[1] != code.n:
        raise LengthMismatch("Assignment rows do not match the message or code length")
    index = messages @ (f.q ** np.arange(f.k - 1, -1, -1, dtype=np.int64))
    if len(np.unique(index)) != f.domain_size or len(index) != f.domain_size:
        raise InputError(f"An assignment must list each of the {f.domain_size} messages exactly once")
    for word in words:
        if not membership(code, word):
            raise InputError(f"{word.tolist()} is not a codeword")
    codewords = np.zeros_like(words)
    codewords[index] = words
    return FccEncoding(kind="table", code=code, function=f, d_d=d_d, d_f=d_f, codewords=codewords)


def encoding_to_json(enc: FccEncoding) -> dict:
    spec = enc.code.field
    data = {"kind": enc.kind, "d_d": enc.d_d, "d_f": enc.d_f}
    if enc.kind == "table":
        messages = message_grid(enc.code.q, enc.function.k)
        data["assignment"] = [[m.tolist(), values_to_json(spec, c)] for m, c in zip(messages, enc.codewords)]
        if enc.grouping is not None:
            data["grouping"] = enc.grouping
    else:
        data["subcode"] = values_to_json(spec, enc.basis.subcode_rows)
        data["complement_rows"] = values_to_json(spec, enc.basis.complement_rows)
        data["message_basis"] = values_to_json(spec, enc.basis.message_basis)
        data["value_map"] = values_to_json(spec, enc.basis.value_map)
    return data


def encoding_from_json(data: dict, code: Code, f: FunctionSpec) -> FccEncoding:
    spec = code.field
    try:
        kind, d_d, d_f = data["kind"], int(data["d_d"]), int(data["d_f"])
        if kind == "table":
            pairs = [(m, values_from_json(spec, c)) for m, c in data["assignment"]]
            return encoding_from_assignment(code, f, d_d, d_f, pairs)
        if kind == "structured":
            _check_shapes(code, f, d_d, d_f)
            complement = values_from_json(spec, data["complement_rows"]).reshape(-1, code.n)
            basis = _structured_basis(
                spec, values_from_json(spec, data["message_basis"]),
                values_from_json(spec, data["subcode"]).reshape(-1, code.n), complement,
                values_from_json(spec, data["value_map"]),
            )
            return FccEncoding(kind="structured", code=code, function=f, d_d=d_d, d_f=d_f, basis=basis)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"Malformed encoding descriptor: {exc}") from exc
    raise ParseError(f"Unknown encoding kind {data.get('kind')!r}")


def save_encoding(enc: FccEncoding, path: str | Path) -> None:
    """Save an encoding descriptor to JSON."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        json.dump(encoding_to_json(enc), fh, indent=2, ensure_ascii=False)


def load_encoding(path: str | Path, code: Code, f: FunctionSpec) -> FccEncoding:
    return encoding_from_json(read_descriptor(path), code, f)


# --- Verification ---

def verify_encoding(enc: FccEncoding, mode: str = "exhaustive", budget: int = ENUM_BUDGET,
                    search_budget: int = SEARCH_BUDGET, pair_budget: int = PAIR_BUDGET,
                    samples: int = 10_000, seed: int = 0) -> VerificationReport:
    if mode not in VERIFY_MODES:
        raise InputError(f"Unknown verification mode {mode!r}")
    if mode == "exhaustive":
        return _verify_exhaustive(enc, budget, pair_budget)
    if mode == "structural":
        return _verify_structural(enc, budget, search_budget)
    return _verify_sampled(enc, samples, seed)


def _report(enc: FccEncoding, mode: str, passed, pairs: int, data_bad: int, func_bad: int,
            details: list[str], total: int | None = None) -> VerificationReport:
    return VerificationReport(
        mode=mode, passed=passed, d_d=enc.d_d, d_f=enc.d_f, strict=enc.strict, pairs_checked=pairs,
        total_pairs=total, data_violations=data_bad, function_violations=func_bad, details=details,
    )


def _verify_exhaustive(enc: FccEncoding, budget: int, pair_budget: int) -> VerificationReport:
    f = enc.function
    total = f.domain_size * (f.domain_size - 1) // 2
    if f.domain_size > budget or total > pair_budget:
        raise BudgetExceeded(f"Exhaustive check needs {total} pairs (budget {pair_budget})")
    messages = message_grid(f.q, f.k)
    words = enc.encode(messages)
    values = f.values(messages)
    data_bad = func_bad = 0
    details = []
    for i in range(len(words) - 1):
        dist = np.count_nonzero(words[i + 1:] != words[i], axis=1)
        differ = np.any(values[i + 1:] != values[i], axis=1)
        low_data = np.flatnonzero(dist < enc.d_d)
        low_func = np.flatnonzero(differ & (dist < enc.d_f))
        data_bad += len(low_data)
        func_bad += len(low_func)
        for j, kind in itertools.chain(((j, "data") for j in low_data), ((j, "function") for j in low_func)):
            if len(details) < MAX_DETAILS:
                details.append(f"{kind}: messages {messages[i].tolist()} and {messages[i + 1 + j].tolist()} "
                               f"at distance {int(dist[j])}")
    passed = data_bad == 0 and func_bad == 0
    logger.info("Exhaustive check of %d pairs: %d data, %d function violations", total, data_bad, func_bad)
    return _report(enc, "exhaustive", passed, total, data_bad, func_bad, details, total)


def _verify_structural(enc: FccEncoding, budget: int, search_budget: int) -> VerificationReport:
    """Distance via the low-weight codewords: none below d_d, and all below d_f inside D'."""
    if enc.kind != "structured":
        raise InputError("Structural verification needs a structured encoding")
    code, basis, f = enc.code, enc.basis, enc.function
    spec = code.field
    gf = spec.gf
    details = []
    k, r = code.k, len(basis.complement_rows)

    low = low_weight_codewords(code, enc.d_f - 1, search_budget)
    data_bad = int(np.count_nonzero(np.count_nonzero(low, axis=1) < enc.d_d)) if len(low) else 0
    subcode = span(spec, basis.subcode_rows, code.n)
    outside = [w for w in low if not membership(subcode, w)]
    func_bad = len(outside)
    if data_bad:
        details.append(f"{data_bad} nonzero codewords weigh less than d_d={enc.d_d}")
    if outside:
        details.append(f"{func_bad} codewords of weight < {enc.d_f} lie outside the subcode, e.g. {outside[0].tolist()}")

    rows_ok = all(membership(code, row) for row in basis.rows) and rank(spec, basis.rows) == k
    kernel_ok = not np.any(to_ints(gf(basis.message_basis[: k - r]) @ gf(f.matrix)))
    values_ok = rank(spec, basis.value_map) == r if r else True
    if not rows_ok:
        details.append("Encoding rows do not form a basis of the code")
    if not (kernel_ok and values_ok):
        details.append("Function values are not determined by the coset of the subcode")
    passed = data_bad == 0 and func_bad == 0 and rows_ok and kernel_ok and values_ok
    details.append(f"checked {len(low)} codewords of weight < {enc.d_f}; dim D' = {k - r}")
    logger.info("Structural check on %s: passed=%s", code.label(), passed)
    return _report(enc, "structural", passed, 0, data_bad, func_bad, details)


def _verify_sampled(enc: FccEncoding, samples: int, seed: int) -> VerificationReport:
    """Random message pairs; a clean run is not a certificate, so passed stays None."""
    f = enc.function
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    first = rng.integers(0, f.q, size=(samples, f.k))
    second = rng.integers(0, f.q, size=(samples, f.k))
    distinct = np.any(first != second, axis=1)
    first, second = first[distinct], second[distinct]
    dist = np.count_nonzero(enc.encode(first) != enc.encode(second), axis=1)
    differ = np.any(f.values(first) != f.values(second), axis=1)
    data_bad = int(np.count_nonzero(dist < enc.d_d))
    func_bad = int(np.count_nonzero(differ & (dist < enc.d_f)))
    passed = False if data_bad or func_bad else None
    total = f.domain_size * (f.domain_size - 1) // 2
    details = [f"sampled {len(first)} of {total} message pairs with seed {seed}"]
    return _report(enc, "sampled", passed, len(first), data_bad, func_bad, details, total)


# --- Decoding ---

def decode(enc: FccEncoding, received, target: str = "data") -> tuple[int, ...]:
    """Message (target="data") or function value (target="function") of a received word.

    Table encodings use the nearest codewords; a tie between different answers is Ambiguous.
    Structured encodings decode up to the guaranteed radius (d_d - 1)//2 or (d_f - 1)//2 by
    syndrome lookup and raise BeyondRadius when no error pattern that small fits.
    """
    if target not in ("data", "function"):
        raise InputError(f"Unknown decoding target {target!r}")
    received = np.asarray(received, dtype=np.int64)
    if received.shape != (enc.code.n,):
        raise LengthMismatch(f"Received word has length {received.size}, expected {enc.code.n}")
    if enc.kind == "table":
        return _decode_table(enc, received, target)
    return _decode_structured(enc, received, target)


def _decode_table(enc: FccEncoding, received: np.ndarray, target: str) -> tuple[int, ...]:
    f = enc.function
    dist = np.count_nonzero(enc.codewords != received, axis=1)
    nearest = np.flatnonzero(dist == dist.min())
    messages = message_grid(f.q, f.k)[nearest]
    answers = messages if target == "data" else f.values(messages)
    distinct = np.unique(answers, axis=0)
    if len(distinct) > 1:
        raise Ambiguous(f"{len(nearest)} codewords at distance {int(dist.min())} give different {target} answers")
    return tuple(int(x) for x in distinct[0])


def _syndrome_table(enc: FccEncoding, radius: int) -> dict:
    """Error patterns of weight <= radius keyed by syndrome, built once per encoding."""
    table = enc.syndromes.get(radius)
    if table is None:
        code = enc.code
        gf = code.field.gf
        patterns = np.concatenate([vectors_of_weight(code.n, code.q, w) for w in range(radius + 1)], axis=0)
        syndromes = to_ints(gf(patterns) @ code.H.T)
        table = {}
        for pattern, syndrome in zip(patterns, syndromes):
            table.setdefault(syndrome.tobytes(), []).append(pattern)
        enc.syndromes[radius] = table
    return table


def _decode_structured(enc: FccEncoding, received: np.ndarray, target: str) -> tuple[int, ...]:
    code, basis, f = enc.code, enc.basis, enc.function
    gf = code.field.gf
    radius = (enc.d_d - 1) // 2 if target == "data" else (enc.d_f - 1) // 2
    syndrome = to_ints(code.H @ gf(received))
    patterns = _syndrome_table(enc, radius).get(syndrome.tobytes(), [])
    if not patterns:
        raise BeyondRadius(f"No error pattern of weight <= {radius} explains the received word")
    candidates = to_ints(gf(np.tile(received, (len(patterns), 1))) - gf(np.asarray(patterns)))
    y = enc.coordinates(candidates)
    if target == "data":
        answers = to_ints(gf(y) @ gf(basis.message_basis))
    else:
        r = len(basis.complement_rows)
        answers = to_ints(gf(y[:, code.k - r:]) @ gf(basis.value_map)) if r else \
            np.zeros((len(y), f.matrix.shape[1]), dtype=np.int64)
    distinct = np.unique(answers, axis=0)
    if len(distinct) > 1:
        raise Ambiguous(f"{len(patterns)} error patterns of weight <= {radius} give different {target} answers")
    return tuple(int(x) for x in distinct[0])


# --- Channel simulation ---

def _trial_chunk(enc: FccEncoding, error_weight: int, count: int, seed_seq) -> tuple[int, int, int, int]:
    code, f = enc.code, enc.function
    gf = code.field.gf
    rng = np.random.default_rng(seed_seq)
    messages = rng.integers(0, f.q, size=(count, f.k))
    words = enc.encode(messages)
    values = f.values(messages)
    data_ok = func_ok = data_amb = func_amb = 0
    for message, word, value in zip(messages, words, values):
        error = np.zeros(code.n, dtype=np.int64)
        positions = rng.choice(code.n, size=error_weight, replace=False)
        error[positions] = rng.integers(1, code.q, size=error_weight)
        received = to_ints(gf(word) + gf(error))
        try:
            data_ok += decode(enc, received, "data") == tuple(int(x) for x in message)
        except Ambiguous:
            data_amb += 1
        try:
            func_ok += decode(enc, received, "function") == tuple(int(x) for x in value)
        except Ambiguous:
            func_amb += 1
    return data_ok, func_ok, data_amb, func_amb


def channel_trial(enc: FccEncoding, error_weight: int, trials: int, seed: int = 0,
                  threads: int = 1) -> ChannelReport:
    """Random messages through random weight-e error patterns; counts of correct decodes.

    Trials run in fixed chunks, each seeded by its own spawned SeedSequence child, so the counts
    depend only on the seed and not on the thread count.
    """
    if not 0 <= error_weight <= enc.code.n:
        raise InputError(f"Error weight {error_weight} outside [0, {enc.code.n}]")
    sizes = [min(TRIAL_CHUNK, trials - start) for start in range(0, trials, TRIAL_CHUNK)]
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = list(zip(sizes, children))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda job: _trial_chunk(enc, error_weight, *job), jobs))
    else:
        results = [_trial_chunk(enc, error_weight, *job) for job in jobs]
    data_ok, func_ok, data_amb, func_amb = (sum(col) for col in zip(*results)) if results else (0, 0, 0, 0)
    logger.info("%d trials at error weight %d: data %d, function %d recovered", trials, error_weight, data_ok, func_ok)
    return ChannelReport(
        trials=trials, error_weight=error_weight, seed=seed, data_recovered=int(data_ok),
        function_recovered=int(func_ok), data_ambiguous=int(data_amb), function_ambiguous=int(func_amb),
    )
