"""Invariants built from crossing signs: linking and intersection analogues, the
Goldman-type bracket, the comultiplication and its variants, and the affine
index polynomial.

Each raw value depends on the chosen labeling (and orientation); the
``canonical_*`` helpers quotient by the symmetry group the value is
invariant up to.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable

from .algebra import (BAR_ONE, CONJ_GROUP, KLEIN_GROUP, POLY_GROUP, SIGN_GROUP, ZERO, BarCoeff,
                      BracketValue, GaussianInt, HomTensorValue, Laurent2, SymmetryOp,
                      SymTensorValue, Tensor2Value, canonicalize, reduce_to_bar)
from .diagram import (DiagramError, LinkDiagram, Loop, all_signs, extract_subdiagram,
                      flat_pair_sign, flatten_sign_f1, is_pseudo_classical, loops_at,
                      mutual_crossings, relabel, reverse, smooth, _raw_sign)
from .surface import (UnsupportedSurfaceError, free_homotopy_class, homology_class)

GROUPS: dict[str, tuple[SymmetryOp, ...]] = {
    "linking": KLEIN_GROUP,
    "delta": SIGN_GROUP,
    "delta0": SIGN_GROUP,
    "deltaH": SIGN_GROUP,
    "bracket_delta": SIGN_GROUP,
    "affine_index": POLY_GROUP,
    "flat_delta": CONJ_GROUP,
    "iterated_flat_delta": CONJ_GROUP,
}


def canonical(name: str, value: Any) -> Any:
    if name == "iterated_flat_delta":
        # one conjugation acts on every degree at once
        return min(([canonicalize_op(op, v) for v in value] for op in CONJ_GROUP),
                   key=lambda vs: tuple(v.sort_key() for v in vs))
    return canonicalize(value, GROUPS[name])


def canonicalize_op(op: SymmetryOp, value: Any) -> Any:
    return canonicalize(value, (op,))


def _knot(d: LinkDiagram, *, homotopy: bool = True) -> None:
    if len(d.components) != 1:
        raise DiagramError("this invariant is defined for one-component diagrams")
    if not is_pseudo_classical(d, 0):
        raise DiagramError("the knot is not pseudo-classical")
    if homotopy and d.surface.is_closed:
        raise UnsupportedSurfaceError("unsupported: closed surface")


def _cls(d: LinkDiagram, loop: Loop):
    return free_homotopy_class(loop.word(d), d.surface)


# --- pairs of curves --------------------------------------------------------------

def linking(d: LinkDiagram, c1: int = 0, c2: int = 1, *, mirror: bool = False) -> GaussianInt:
    """Sum of ``eps(x) * sign(x)`` over crossings between the two components."""
    if len(d.components) < 2 or c1 == c2:
        raise DiagramError("linking needs two distinct components")
    total = ZERO
    for x, c1_over in mutual_crossings(d, c1, c2):
        s = _raw_sign(d, x, mirror)
        total = total + (s if c1_over else -s)
    return total


def intersection_number(d: LinkDiagram, first: Loop | int, second: Loop | int, *,
                        mirror: bool = False) -> GaussianInt:
    total = ZERO
    for x, first_over in mutual_crossings(d, first, second):
        total = total + flat_pair_sign(_raw_sign(d, x, mirror), first_over)
    return total


def goldman(d: LinkDiagram, first: Loop | int, second: Loop | int, *,
            mirror: bool = False) -> BracketValue:
    if d.surface.is_closed:
        raise UnsupportedSurfaceError("unsupported: closed surface")
    terms = []
    for y, first_over in mutual_crossings(d, first, second):
        coeff = flat_pair_sign(_raw_sign(d, y, mirror), first_over)
        terms.append((free_homotopy_class(smooth(d, first, second, y), d.surface), coeff))
    return BracketValue(terms)


# --- comultiplication -------------------------------------------------------------

@dataclass(frozen=True)
class CrossingTerm:
    crossing: str
    sign: GaussianInt
    l1: Loop
    l2: Loop


def delta_terms(d: LinkDiagram, *, mirror: bool = False) -> list[CrossingTerm]:
    _knot(d, homotopy=False)
    signs = all_signs(d, mirror=mirror)
    return [CrossingTerm(x, signs[x], *loops_at(d, x)) for x in d.crossings]


def delta(d: LinkDiagram, *, mirror: bool = False) -> Tensor2Value:
    _knot(d)
    return Tensor2Value(((_cls(d, t.l1), _cls(d, t.l2)), t.sign)
                        for t in delta_terms(d, mirror=mirror))


def minus_knot(d: LinkDiagram) -> LinkDiagram:
    """Orientation reversed and labeling permuted."""
    return relabel(reverse(d))


def delta0(d: LinkDiagram, *, mirror: bool = False) -> Tensor2Value:
    return delta(d, mirror=mirror) + delta(minus_knot(d), mirror=mirror)


def deltaH(d: LinkDiagram, *, mirror: bool = False) -> HomTensorValue:
    _knot(d, homotopy=False)
    terms = []
    for t in delta_terms(d, mirror=mirror):
        h1 = homology_class(t.l1.word(d), d.surface)
        h2 = homology_class(t.l2.word(d), d.surface)
        terms.append(((h1, h2), t.sign))
    return HomTensorValue(terms)


def project_to_homology(d: LinkDiagram, value: Tensor2Value) -> HomTensorValue:
    """Abelianize both factors of every term; null-homologous terms vanish."""
    return HomTensorValue(((homology_class(c1.word, d.surface), homology_class(c2.word, d.surface)), z)
                          for (c1, c2), z in value.items())


def bracket_delta(d: LinkDiagram, *, mirror: bool = False) -> BracketValue:
    _knot(d)
    total = BracketValue()
    for t in delta_terms(d, mirror=mirror):
        total = total + goldman(d, t.l1, t.l2, mirror=mirror).scale(t.sign)
    return total


def affine_index(d: LinkDiagram, *, mirror: bool = False) -> Laurent2:
    """``sum sign(x) x^Re(l1.l2) y^Im(l1.l2)`` over crossings with no contractible loop."""
    _knot(d)
    terms = []
    for x in d.crossings:
        l1, l2 = loops_at(d, x)
        if _cls(d, l1).is_trivial or _cls(d, l2).is_trivial:
            continue
        n = intersection_number(d, l1, l2, mirror=mirror)
        terms.append(((n.re, n.im), _raw_sign(d, x, mirror)))
    return Laurent2(terms)


def f_map(d: LinkDiagram, terms: Iterable[CrossingTerm], *, mirror: bool = False) -> Laurent2:
    """The linear map sending ``[l1] (x) [l2]`` to a monomial in the loops' intersection number."""
    out = []
    for t in terms:
        if _cls(d, t.l1).is_trivial or _cls(d, t.l2).is_trivial:
            continue
        n = intersection_number(d, t.l1, t.l2, mirror=mirror)
        out.append(((n.re, n.im), t.sign))
    return Laurent2(out)


# --- flat comultiplication ----------------------------------------------------------

@lru_cache(maxsize=50_000)
def _flat_terms_cached(d: LinkDiagram, ring: str, mirror: bool):
    if not is_pseudo_classical(d, 0):
        return ()
    out = []
    for x in d.crossings:
        s = reduce_to_bar(flatten_sign_f1(_raw_sign(d, x, mirror)), ring)
        l1, l2 = loops_at(d, x)
        out.append((s, extract_subdiagram(d, l1), extract_subdiagram(d, l2)))
    return tuple(out)


@lru_cache(maxsize=50_000)
def _whole_class(d: LinkDiagram):
    return free_homotopy_class(d.components[0].closed_word, d.surface)


def flat_delta(d: LinkDiagram, ring: str = "z2i", *, mirror: bool = False) -> SymTensorValue:
    _knot(d)
    return SymTensorValue(((_whole_class(a), _whole_class(b)), s)
                          for s, a, b in _flat_terms_cached(_flat(d), ring, mirror))


def _flat(d: LinkDiagram) -> LinkDiagram:
    return d if d.flat else LinkDiagram(d.surface, d.components, d.corners, True)


def iterated_flat_delta(d: LinkDiagram, ring: str = "z2i", *, mirror: bool = False,
                        max_terms: int = 2_000_000) -> list[SymTensorValue]:
    """Degrees 1, 2, ... obtained by applying the flat comultiplication factor by factor.

    Non-pseudo-classical factors are not expanded.  Returns the list up to the
    last nonzero degree (empty when the curve is contractible).
    """
    _knot(d)
    d = _flat(d)
    level: list[tuple[BarCoeff, tuple[LinkDiagram, ...]]] = []
    if not _whole_class(d).is_trivial:
        level = [(BAR_ONE, (d,))]
    degrees: list[SymTensorValue] = []
    while level:
        degrees.append(SymTensorValue((tuple(_whole_class(f) for f in factors), c)
                                      for c, factors in level))
        nxt = []
        for coeff, factors in level:
            for k, f in enumerate(factors):
                for s, a, b in _flat_terms_cached(f, ring, mirror):
                    c = coeff * s
                    if not c or _whole_class(a).is_trivial or _whole_class(b).is_trivial:
                        continue
                    nxt.append((c, factors[:k] + (a, b) + factors[k + 1:]))
            if len(nxt) > max_terms:
                raise RuntimeError("iterated flat comultiplication exceeded the term budget")
        level = nxt
    while degrees and not degrees[-1]:
        degrees.pop()
    return degrees


# --- report -------------------------------------------------------------------------

@dataclass(frozen=True)
class Record:
    name: str
    raw: Any
    canonical: Any
    group: str
    status: str = "ok"


def _group_name(name: str) -> str:
    return "{" + ", ".join(op.value for op in GROUPS[name]) + "}"


KNOT_INVARIANTS = ("delta", "delta0", "deltaH", "bracket_delta", "affine_index",
                   "flat_delta", "iterated_flat_delta")


def compute(name: str, d: LinkDiagram, ring: str = "z2i") -> Any:
    fn = {
        "delta": delta, "delta0": delta0, "deltaH": deltaH, "bracket_delta": bracket_delta,
        "affine_index": affine_index,
        "flat_delta": lambda dd: flat_delta(dd, ring),
        "iterated_flat_delta": lambda dd: iterated_flat_delta(dd, ring),
    }[name]
    return fn(d)


def report(d: LinkDiagram, ring: str = "z2i", skip: Iterable[str] = ()) -> list[Record]:
    skip = set(skip)
    records = []
    if len(d.components) == 1:
        for name in KNOT_INVARIANTS:
            if name in skip:
                continue
            try:
                raw = compute(name, d, ring)
            except UnsupportedSurfaceError:
                records.append(Record(name, None, None, _group_name(name),
                                      "unsupported: closed surface"))
                continue
            records.append(Record(name, raw, canonical(name, raw), _group_name(name)))
    elif "linking" not in skip:
        n = len(d.components)
        for i in range(n):
            for j in range(i + 1, n):
                raw = linking(d, i, j)
                records.append(Record(f"linking[{i},{j}]", raw, canonical("linking", raw),
                                      _group_name("linking")))
    return records
