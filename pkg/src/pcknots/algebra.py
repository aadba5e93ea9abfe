"""Exact coefficient rings and the linear-combination value types of the invariants.

Coefficients live in the Gaussian integers ``Z[i]`` (crossing signs are
``+1, -1, +i, -i``) or in the four-element quotient ``Z[i]/(2)`` used by the
flat invariants.  Every value type is an immutable, zero-free term map, so
two values are equal exactly when their term maps are equal.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Any, Callable, Iterable, Mapping


@dataclass(frozen=True)
class GaussianInt:
    re: int = 0
    im: int = 0

    def __add__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re + other.re, self.im + other.im)

    def __sub__(self, other: GaussianInt) -> GaussianInt:
        return GaussianInt(self.re - other.re, self.im - other.im)

    def __neg__(self) -> GaussianInt:
        return GaussianInt(-self.re, -self.im)

    def __mul__(self, other: GaussianInt | int) -> GaussianInt:
        if isinstance(other, int):
            return GaussianInt(self.re * other, self.im * other)
        return GaussianInt(self.re * other.re - self.im * other.im,
                           self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def conj(self) -> GaussianInt:
        return GaussianInt(self.re, -self.im)

    def swap(self) -> GaussianInt:
        """Reflection in the line re = im: ``a + bi -> b + ai``."""
        return GaussianInt(self.im, self.re)

    def is_real_unit(self) -> bool:
        return self.im == 0 and abs(self.re) == 1

    def is_imaginary_unit(self) -> bool:
        return self.re == 0 and abs(self.im) == 1

    def __str__(self) -> str:
        return format_gaussian(self)


ZERO = GaussianInt(0, 0)
ONE = GaussianInt(1, 0)
I = GaussianInt(0, 1)


def format_gaussian(z: GaussianInt) -> str:
    if z.im == 0:
        return f"{z.re:+d}"
    if z.re == 0:
        if abs(z.im) == 1:
            return "+i" if z.im > 0 else "-i"
        return f"{z.im:+d}i"
    return f"({z.re:+d}{z.im:+d}i)"


@dataclass(frozen=True, order=True)
class BarCoeff:
    """Element of Z[i]/(2): one of 0, 1, i, 1+i."""

    re2: int = 0
    im2: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "re2", self.re2 % 2)
        object.__setattr__(self, "im2", self.im2 % 2)

    def __add__(self, other: BarCoeff) -> BarCoeff:
        return BarCoeff(self.re2 + other.re2, self.im2 + other.im2)

    def __neg__(self) -> BarCoeff:
        return self

    def __mul__(self, other: BarCoeff) -> BarCoeff:
        return BarCoeff(self.re2 * other.re2 - self.im2 * other.im2,
                        self.re2 * other.im2 + self.im2 * other.re2)

    def __bool__(self) -> bool:
        return bool(self.re2 or self.im2)

    def conj(self) -> BarCoeff:
        return BarCoeff(self.re2, -self.im2)

    def __str__(self) -> str:
        return {(0, 0): "0", (1, 0): "1", (0, 1): "i", (1, 1): "(1+i)"}[(self.re2, self.im2)]


BAR_ONE = BarCoeff(1, 0)

BAR_RINGS = ("z2i", "z2")


def reduce_to_bar(z: GaussianInt, ring: str = "z2i") -> BarCoeff:
    """Reduce mod the ideal (2).

    ``ring="z2"`` additionally sends ``i`` to zero, which is the additive
    quotient by ``{2a + bi}`` read literally.
    """
    if ring == "z2i":
        return BarCoeff(z.re, z.im)
    if ring == "z2":
        return BarCoeff(z.re, 0)
    raise ValueError(f"unknown bar ring {ring!r}")


class SymmetryOp(enum.Enum):
    IDENTITY = "identity"
    NEGATE = "negate"
    CONJ = "conj"
    S = "S"
    NEG_S = "negS"
    INVERT_AND_NEGATE = "invert-exponents-and-negate"


def gaussian_apply(op: SymmetryOp, z: GaussianInt) -> GaussianInt:
    if op is SymmetryOp.IDENTITY:
        return z
    if op is SymmetryOp.NEGATE:
        return -z
    if op is SymmetryOp.CONJ:
        return z.conj()
    if op is SymmetryOp.S:
        return z.swap()
    if op is SymmetryOp.NEG_S:
        return -z.swap()
    raise ValueError(f"{op.value} acts on polynomials only")


# --- ordering -------------------------------------------------------------

def order_key(obj: Any) -> Any:
    """Total-order key used for canonical forms and deterministic output."""
    if hasattr(obj, "sort_key"):
        return obj.sort_key()
    if isinstance(obj, tuple):
        return tuple(order_key(o) for o in obj)
    if isinstance(obj, GaussianInt):
        # descending, so canonical forms lead with positive coefficients
        return (-obj.re, -obj.im)
    if isinstance(obj, BarCoeff):
        return (obj.re2, obj.im2)
    return obj


def _is_trivial_generator(gen: Any) -> bool:
    return bool(getattr(gen, "is_trivial", False))


# --- value types ----------------------------------------------------------

class _TermMap:
    """Immutable zero-free map from keys to ring coefficients."""

    __slots__ = ("_terms", "_key")
    zero_coeff: Any = ZERO

    def __init__(self, terms: Mapping[Any, Any] | Iterable[tuple[Any, Any]] = ()):
        acc: dict[Any, Any] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            key = self._normalize_key(key)
            if key is None:
                continue
            acc[key] = acc.get(key, self.zero_coeff) + coeff
        self._terms = tuple(sorted(((k, c) for k, c in acc.items() if c),
                                   key=lambda kc: (order_key(kc[0]), order_key(kc[1]))))
        self._key = None

    @classmethod
    def _normalize_key(cls, key: Any) -> Any:
        return key

    @property
    def terms(self) -> dict[Any, Any]:
        return dict(self._terms)

    def items(self) -> tuple[tuple[Any, Any], ...]:
        return self._terms

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        return type(self) is type(other) and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((type(self).__name__, self._terms))

    def __add__(self, other):
        if type(other) is not type(self):
            return NotImplemented
        return self._new(self._terms + other._terms)

    def __neg__(self):
        return self.map_coefficients(lambda c: -c)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return self._new((k, c * v) for k, v in self._terms)

    def map_coefficients(self, fn: Callable[[Any], Any]):
        return self._new((k, fn(v)) for k, v in self._terms)

    def _new(self, items):
        return type(self)(items)

    def sort_key(self):
        if self._key is None:
            self._key = tuple((order_key(k), order_key(c)) for k, c in self._terms)
        return self._key

    def __repr__(self) -> str:
        return f"{type(self).__name__}({format_value(self)})"


class Tensor2Value(_TermMap):
    """Ordered tensors ``[l1] (x) [l2]`` with Gaussian coefficients."""

    @classmethod
    def _normalize_key(cls, key):
        if any(_is_trivial_generator(g) for g in key):
            return None
        return tuple(key)

    def symmetrized(self) -> SymTensorValue:
        return SymTensorValue((k, reduce_to_bar(c)) for k, c in self._terms)


class HomTensorValue(Tensor2Value):
    """Ordered tensors of homology classes; null-homologous factors vanish."""


class SymTensorValue(_TermMap):
    """Symmetric tensors (unordered multisets of classes) over Z[i]/(2)."""

    zero_coeff = BarCoeff()

    @classmethod
    def _normalize_key(cls, key):
        if any(_is_trivial_generator(g) for g in key):
            return None
        return tuple(sorted(key, key=order_key))

    @property
    def degree(self) -> int | None:
        return len(self._terms[0][0]) if self._terms else None


class BracketValue(_TermMap):
    """Linear combinations of single free homotopy classes."""

    @classmethod
    def _normalize_key(cls, key):
        return None if _is_trivial_generator(key) else key


class Laurent2(_TermMap):
    """Gaussian-coefficient Laurent polynomials in x, y keyed by exponents."""

    @classmethod
    def _normalize_key(cls, key):
        a, b = key
        return (int(a), int(b))

    def invert_and_negate(self) -> Laurent2:
        return Laurent2(((-a, -b), -c) for (a, b), c in self._terms)


# --- symmetry groups ------------------------------------------------------

def coefficient_action(op: SymmetryOp) -> Callable[[Any], Any]:
    if op is SymmetryOp.INVERT_AND_NEGATE:
        return lambda v: v.invert_and_negate()
    if op is SymmetryOp.CONJ:
        return lambda v: v.map_coefficients(lambda c: c.conj())
    return lambda v: v.map_coefficients(lambda c: gaussian_apply(op, c))


SIGN_GROUP = (SymmetryOp.IDENTITY, SymmetryOp.NEGATE)
CONJ_GROUP = (SymmetryOp.IDENTITY, SymmetryOp.CONJ)
KLEIN_GROUP = (SymmetryOp.IDENTITY, SymmetryOp.NEGATE, SymmetryOp.S, SymmetryOp.NEG_S)
POLY_GROUP = (SymmetryOp.IDENTITY, SymmetryOp.INVERT_AND_NEGATE)


def act(op: SymmetryOp, value: Any) -> Any:
    if isinstance(value, GaussianInt):
        return gaussian_apply(op, value)
    if op is SymmetryOp.IDENTITY:
        return value
    return coefficient_action(op)(value)


def canonicalize(value: Any, group: Iterable[SymmetryOp]) -> Any:
    """Least element of the orbit of ``value`` under ``group``."""
    return min((act(op, value) for op in group), key=order_key)


# --- text -----------------------------------------------------------------

def format_key(key: Any) -> str:
    if isinstance(key, tuple) and key and not isinstance(key[0], int):
        return "⊗".join(format_key(k) for k in key)
    if isinstance(key, tuple):
        return "(" + ",".join(str(k) for k in key) + ")"
    return str(key)


def _format_monomial(exps: tuple[int, int]) -> str:
    parts = []
    for var, e in zip("xy", exps):
        if e == 1:
            parts.append(var)
        elif e:
            parts.append(f"{var}^{e}")
    return "·".join(parts)


def format_value(value: Any) -> str:
    if isinstance(value, GaussianInt):
        return format_gaussian(value)
    if isinstance(value, BarCoeff):
        return str(value)
    if not value:
        return "0"
    out = []
    for key, coeff in value.items():
        c = format_gaussian(coeff) if isinstance(coeff, GaussianInt) else str(coeff)
        if isinstance(value, Laurent2):
            mono = _format_monomial(key)
            out.append(f"{c}·{mono}" if mono else c)
        elif isinstance(value, SymTensorValue):
            out.append(f"{c}·{{{', '.join(format_key(k) for k in key)}}}")
        else:
            out.append(f"{c}·{format_key(key)}")
    text = " ".join(out)
    return text


def value_to_json(value: Any) -> Any:
    if isinstance(value, GaussianInt):
        return [value.re, value.im]
    if isinstance(value, BarCoeff):
        return [value.re2, value.im2]
    return [[format_key(k) if not isinstance(value, Laurent2) else list(k),
             value_to_json(c)] for k, c in value.items()]
