"""Exact arithmetic in GF(p) and GF(p^m) on top of galois field arrays.

A FieldSpec pins down the modulus and the primitive element, so every object built on it
(codes, BCH parity checks, discrete logs) is reproducible across runs. galois switches to
log/antilog lookup tables for the field sizes used here, which keeps the element-wise
work in `codes` and `bch` vectorised.
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import galois
import numpy as np

from src.config import FIELD_ORDER_LIMIT
from src.errors import (
    DivisionByZero,
    FieldMismatch,
    InputError,
    NoPrimitiveFound,
    NotPrime,
    Reducible,
    ZeroElement,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FieldSpec:
    p: int
    m: int
    modulus: tuple[int, ...] | None  # ascending coefficients, monic; None for prime fields
    alpha: int  # integer representation of the primitive element
    gf: type = field(default=None, compare=False, repr=False)

    @property
    def order(self) -> int:
        return self.p**self.m

    @property
    def prime_field(self) -> type:
        return galois.GF(self.p)

    @property
    def primitive_element(self) -> "FieldElement":
        return FieldElement(self, self.alpha)

    def element(self, value: int) -> "FieldElement":
        if not 0 <= value < self.order:
            raise InputError(f"{value} is not an element of GF({self.order})")
        return FieldElement(self, int(value))

    def from_coeffs(self, coeffs) -> "FieldElement":
        """Element from its ascending polynomial-basis coefficients."""
        coeffs = [int(c) for c in coeffs]
        if len(coeffs) != self.m or any(not 0 <= c < self.p for c in coeffs):
            raise InputError(f"Coefficient vector {coeffs} does not describe an element of GF({self.order})")
        return FieldElement(self, sum(c * self.p**i for i, c in enumerate(coeffs)))

    def array(self, data) -> galois.FieldArray:
        """Field array from integer representations (nested lists or numpy arrays)."""
        values = np.asarray(data, dtype=np.int64)
        if values.size and (values.min() < 0 or values.max() >= self.order):
            raise InputError(f"Entries outside {self.label()}")
        return self.gf(values)

    def label(self) -> str:
        return f"GF({self.p})" if self.m == 1 else f"GF({self.p}^{self.m})"


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    value: int

    @property
    def coeffs(self) -> tuple[int, ...]:
        vec = self.field.gf(self.value).vector()
        return tuple(int(c) for c in np.asarray(vec)[::-1])

    @property
    def is_zero(self) -> bool:
        return self.value == 0

    def __add__(self, other: "FieldElement") -> "FieldElement":
        return ff_add(self, other)

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        return ff_add(self, ff_neg(other))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        return ff_mul(self, other)

    def __neg__(self) -> "FieldElement":
        return ff_neg(self)

    def __pow__(self, exponent: int) -> "FieldElement":
        return ff_pow(self, exponent)

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        return ff_mul(self, ff_inv(other))


def field_create(p: int, m: int = 1, modulus=None, primitive=None) -> FieldSpec:
    """Build GF(p^m).

    modulus: ascending coefficient list of a monic degree-m polynomial (searched when absent).
    primitive: integer representation or ascending coefficient list overriding the default
    primitive element (the smallest one of full order).
    """
    modulus = tuple(int(c) for c in modulus) if modulus is not None else None
    if isinstance(primitive, (list, tuple)):
        primitive = sum(int(c) * p**i for i, c in enumerate(primitive))
    return _field_create(int(p), int(m), modulus, None if primitive is None else int(primitive))


@lru_cache(maxsize=64)
def _field_create(p: int, m: int, modulus: tuple[int, ...] | None, primitive: int | None) -> FieldSpec:
    if not galois.is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if m < 1:
        raise InputError(f"Extension degree must be at least 1, got {m}")
    order = p**m
    if order > FIELD_ORDER_LIMIT:
        raise NoPrimitiveFound(
            f"GF({p}^{m}) exceeds the exhaustive primitivity check bound {FIELD_ORDER_LIMIT}"
        )

    poly = None
    if m > 1:
        if modulus is None:
            poly = galois.irreducible_poly(p, m, method="min")
        else:
            if len(modulus) != m + 1 or modulus[-1] != 1:
                raise InputError(f"Modulus {list(modulus)} is not monic of degree {m}")
            if any(not 0 <= c < p for c in modulus):
                raise InputError(f"Modulus {list(modulus)} has coefficients outside [0, {p})")
            poly = galois.Poly(list(modulus), field=galois.GF(p), order="asc")
            if not poly.is_irreducible():
                raise Reducible(f"{poly} is reducible over GF({p})")
    elif modulus is not None:
        raise InputError("A modulus only applies to extension fields (m > 1)")

    if primitive is None:
        if m == 1:
            primitive = int(galois.primitive_root(p))
        else:
            primitive = int(galois.primitive_element(poly, method="min"))

    base = galois.GF(order, irreducible_poly=poly) if poly is not None else galois.GF(p)
    if not 0 < primitive < order or int(base(primitive).multiplicative_order()) != order - 1:
        raise InputError(f"Element {primitive} is not primitive in GF({order})")
    gf = galois.GF(order, irreducible_poly=poly, primitive_element=primitive) if poly is not None \
        else galois.GF(p, primitive_element=primitive)

    ascending = tuple(int(c) for c in np.asarray(poly.coeffs)[::-1]) if poly is not None else None
    logger.debug("Built GF(%d^%d) modulus=%s alpha=%d", p, m, ascending, primitive)
    return FieldSpec(p=p, m=m, modulus=ascending, alpha=primitive, gf=gf)


def to_ints(values) -> np.ndarray:
    """Plain int64 copy of a field array (drops the galois subclass)."""
    if isinstance(values, galois.FieldArray):
        values = values.view(np.ndarray)
    return np.array(values, dtype=np.int64)


def field_for_order(q: int) -> FieldSpec:
    """Default field of order q (q must be a prime power)."""
    if not galois.is_prime_power(q):
        raise NotPrime(f"{q} is not a prime power")
    primes, exponents = galois.factors(q)
    return field_create(int(primes[0]), int(exponents[0]))


# --- Element operations ---

def _same_field(a: FieldElement, b: FieldElement) -> None:
    if a.field != b.field:
        raise FieldMismatch(f"Operands live in {a.field.label()} and {b.field.label()}")


def ff_add(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    gf = a.field.gf
    return FieldElement(a.field, int(gf(a.value) + gf(b.value)))


def ff_mul(a: FieldElement, b: FieldElement) -> FieldElement:
    _same_field(a, b)
    gf = a.field.gf
    return FieldElement(a.field, int(gf(a.value) * gf(b.value)))


def ff_neg(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, int(-a.field.gf(a.value)))


def ff_inv(a: FieldElement) -> FieldElement:
    if a.value == 0:
        raise DivisionByZero("Zero has no multiplicative inverse")
    return FieldElement(a.field, int(np.reciprocal(a.field.gf(a.value))))


def ff_pow(a: FieldElement, exponent: int) -> FieldElement:
    if a.value == 0 and exponent < 0:
        raise DivisionByZero("Negative power of zero")
    return FieldElement(a.field, int(a.field.gf(a.value) ** int(exponent)))


def discrete_log(beta: FieldElement, base: FieldElement) -> int:
    """Exponent e in [0, p^m - 1) with base^e = beta."""
    _same_field(beta, base)
    spec = beta.field
    if beta.value == 0:
        raise ZeroElement("Discrete log of zero is undefined")
    if int(spec.gf(base.value).multiplicative_order()) != spec.order - 1:
        raise InputError(f"Base {base.value} is not primitive in {spec.label()}")
    return int(spec.gf(beta.value).log(spec.gf(base.value)))


def frobenius_fixed(spec: FieldSpec) -> list[FieldElement]:
    """Elements with x^p = x, i.e. the prime subfield inside GF(p^m)."""
    elements = spec.gf.elements
    fixed = elements[elements**spec.p == elements]
    return [FieldElement(spec, int(v)) for v in np.asarray(fixed)]


# --- JSON ---

def field_to_json(spec: FieldSpec) -> dict:
    data = {"p": spec.p, "m": spec.m}
    if spec.modulus is not None:
        data["modulus"] = list(spec.modulus)
    data["primitive"] = element_to_json(spec.primitive_element)
    return data


def field_from_json(data: dict) -> FieldSpec:
    try:
        p, m = int(data["p"]), int(data.get("m", 1))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"Malformed field descriptor: {data!r}") from exc
    primitive = data.get("primitive")
    return field_create(p, m, data.get("modulus"), primitive)


def element_to_json(el: FieldElement) -> int | list[int]:
    return el.value if el.field.m == 1 else list(el.coeffs)


def values_from_json(spec: FieldSpec, data) -> np.ndarray:
    """Integer representations of a (nested) JSON vector / matrix of element encodings."""
    if spec.m == 1:
        return np.asarray(data, dtype=np.int64)

    def _convert(obj):
        if isinstance(obj, list) and obj and isinstance(obj[0], list) and not isinstance(obj[0][0], list):
            return [spec.from_coeffs(c).value for c in obj]
        if isinstance(obj, list) and obj and isinstance(obj[0], int):
            return spec.from_coeffs(obj).value
        return [_convert(o) for o in obj]

    return np.asarray(_convert(data), dtype=np.int64)


def values_to_json(spec: FieldSpec, values) -> list:
    """Inverse of values_from_json for vectors and matrices."""
    plain = to_ints(values).tolist()
    return plain if spec.m == 1 else _nested_coeffs(spec, plain)


def _nested_coeffs(spec: FieldSpec, obj):
    if isinstance(obj, list):
        return [_nested_coeffs(spec, o) for o in obj]
    return list(FieldElement(spec, int(obj)).coeffs)
