"""Open and closed chain codes: k weight-d interval rows, consecutive rows sharing s positions."""

import logging
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from src.codes import Code, code_from_generator
from src.errors import DegenerateClosed, InputError, InvalidOverlap, OverlapBoundViolated
from src.field import FieldSpec
from src.models import LengthComparisonRow

logger = logging.getLogger(__name__)

VARIANTS = ("open", "closed")
LEVELS = {"gap2": 2, "gap4": 4}  # gap to the next nonzero weight that the overlap bound guarantees


@dataclass(frozen=True)
class ChainSpec:
    variant: str
    k: int
    d: int
    s: int
    field: FieldSpec = field(compare=False)
    fill: tuple | None = None  # per row: a nonzero scalar or a length-d tuple of nonzero values

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise InputError(f"Unknown chain variant {self.variant!r}")
        if self.k < 2 or self.d < 2:
            raise InputError(f"Chain codes need k >= 2 and d >= 2, got k={self.k}, d={self.d}")
        if not 0 <= self.s < self.d:
            raise InvalidOverlap(f"Overlap s={self.s} must satisfy 0 <= s < d={self.d}")

    @property
    def n(self) -> int:
        if self.variant == "open":
            return self.k * self.d - (self.k - 1) * self.s
        return self.k * (self.d - self.s)

    @property
    def q(self) -> int:
        return self.field.order

    def label(self) -> str:
        tag = "o" if self.variant == "open" else "c"
        return f"C_{tag}({self.k},{self.d},{self.s})_{self.q}"


@dataclass(frozen=True)
class ChainParams:
    n: int
    k: int
    d: int
    a_d: int
    zero_weights: tuple[int, ...]  # weights above d with no codewords


def _fill_rows(spec: ChainSpec) -> np.ndarray:
    if spec.fill is None:
        return np.ones((spec.k, spec.d), dtype=np.int64)
    if len(spec.fill) != spec.k:
        raise InputError(f"Fill pattern has {len(spec.fill)} rows, expected {spec.k}")
    rows = []
    for entry in spec.fill:
        row = [int(entry)] * spec.d if np.isscalar(entry) else [int(v) for v in entry]
        if len(row) != spec.d:
            raise InputError(f"Fill row {list(row)} does not have d={spec.d} entries")
        if any(not 0 < v < spec.q for v in row):
            raise InputError(f"Fill row {list(row)} must hold nonzero elements of {spec.field.label()}")
        rows.append(row)
    return np.asarray(rows, dtype=np.int64)


def chain_generate(spec: ChainSpec) -> Code:
    """Generator with row i on positions [i(d-s), i(d-s)+d), taken mod n for closed chains."""
    n = spec.n
    if spec.variant == "closed" and spec.d >= n:
        raise DegenerateClosed(f"{spec.label()}: a row of weight {spec.d} wraps onto itself in length {n}")
    fill = _fill_rows(spec)
    step = spec.d - spec.s
    generator = np.zeros((spec.k, n), dtype=np.int64)
    for i in range(spec.k):
        positions = (i * step + np.arange(spec.d)) % n
        generator[i, positions] = fill[i]
    logger.debug("Generated %s with n=%d", spec.label(), n)
    return code_from_generator(spec.field, generator)


def overlap_bound(variant: str, k: int, d: int, level: str = "gap2") -> int:
    """Largest overlap the weight-gap argument admits (negative when none does)."""
    if level not in LEVELS:
        raise InputError(f"Unknown overlap level {level!r}")
    gap = LEVELS[level]
    bound = (d - gap) // 2
    if variant == "closed":
        bound = min(bound, ((k - 1) * d - gap) // (2 * k))
    return bound


def chain_check_overlap(spec: ChainSpec, level: str = "gap2") -> bool:
    if level == "gap4" and spec.d < 4:
        return False
    return spec.s <= overlap_bound(spec.variant, spec.k, spec.d, level)


def chain_expected_params(spec: ChainSpec, level: str = "gap2") -> ChainParams:
    """Predicted [n, k, d], A_d = k(q-1), and the weights above d that carry no codewords."""
    if not chain_check_overlap(spec, level):
        raise OverlapBoundViolated(
            f"{spec.label()}: s={spec.s} exceeds the {level} bound "
            f"{overlap_bound(spec.variant, spec.k, spec.d, level)}"
        )
    gap = LEVELS[level]
    return ChainParams(
        n=spec.n, k=spec.k, d=spec.d, a_d=spec.k * (spec.q - 1),
        zero_weights=tuple(range(spec.d + 1, spec.d + gap)),
    )


def max_overlap(variant: str, k: int, d: int, level: str = "gap2") -> int | None:
    bound = overlap_bound(variant, k, d, level)
    return bound if bound >= 0 else None


def chain_rate(spec: ChainSpec) -> Fraction:
    return Fraction(spec.k, spec.n)


def length_comparison(q: int, d: int, ks, level: str = "gap2") -> list[LengthComparisonRow]:
    """Open vs closed lengths at the largest admissible overlap for each k."""
    rows = []
    for k in ks:
        s_o = max_overlap("open", k, d, level)
        s_c = max_overlap("closed", k, d, level)
        n_o = None if s_o is None else k * d - (k - 1) * s_o
        n_c = None if s_c is None else k * (d - s_c)
        rows.append(LengthComparisonRow(
            q=q, d=d, k=k, s_open=s_o, n_open=n_o, s_closed=s_c, n_closed=n_c,
            difference=None if n_o is None or n_c is None else n_o - n_c,
        ))
    return rows
