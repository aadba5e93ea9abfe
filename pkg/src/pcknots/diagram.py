"""Decorated Gauss-code diagrams on a non-orientable surface and their crossing signs.

A component is a cyclic sequence of passes through crossings.  The arc from
pass ``j`` to pass ``j + 1`` carries a word in the fundamental group; its
orientation character says whether the local frame flips along that arc.
At each crossing the four strand ends sit in slots ``0..3`` counterclockwise
in the crossing's own disk frame, with the over strand entering at slot 0.
The corner bit records whether the under strand enters at slot 1 (``ccw``)
or slot 3 (``cw``).

The twist parity of a pass is the orientation character of the path from the
basepoint (pass 0) to it; it tells whether the traveller's transported frame
agrees with the crossing's disk frame.  This is all the data the 2-cabling
needs: see :mod:`pcknots.cabling` for the explicit construction used as an
oracle for :func:`crossing_sign`.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, Sequence

from .algebra import ONE, GaussianInt
from .surface import SurfacePresentation, Word, format_word, inverse, w1

OVER, UNDER = "over", "under"
CCW, CW = "ccw", "cw"


class DiagramError(ValueError):
    pass


class NotPseudoClassicalError(DiagramError):
    pass


@dataclass(frozen=True)
class Pass:
    crossing: str
    role: str

    def __str__(self) -> str:
        return f"{self.role} {self.crossing}"


@dataclass(frozen=True)
class Component:
    passes: tuple[Pass, ...]
    edges: tuple[Word, ...]
    labeling: int = 0

    @property
    def closed_word(self) -> Word:
        return tuple(letter for e in self.edges for letter in e)


@dataclass(frozen=True)
class LinkDiagram:
    surface: SurfacePresentation
    components: tuple[Component, ...]
    corners: tuple[tuple[str, str], ...]
    flat: bool = False

    @cached_property
    def corner(self) -> dict[str, str]:
        return dict(self.corners)

    @cached_property
    def crossings(self) -> tuple[str, ...]:
        return tuple(x for x, _ in self.corners)

    @cached_property
    def locate(self) -> dict[tuple[str, str], tuple[int, int]]:
        """``(crossing, role) -> (component, position)``."""
        out = {}
        for c, comp in enumerate(self.components):
            for j, p in enumerate(comp.passes):
                out.setdefault((p.crossing, p.role), (c, j))
        return out

    @cached_property
    def parities(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for comp in self.components:
            acc, par = 0, []
            for j in range(len(comp.passes)):
                par.append(acc)
                acc ^= w1(comp.edges[j], self.surface)
            out.append(tuple(par))
        return tuple(out)

    def pass_at(self, c: int, j: int) -> Pass:
        return self.components[c].passes[j]

    def n_passes(self, c: int) -> int:
        return len(self.components[c].passes)

    def component_of(self, x: str) -> tuple[int, int]:
        return self.locate[(x, OVER)][0], self.locate[(x, UNDER)][0]

    def is_self_crossing(self, x: str) -> bool:
        a, b = self.component_of(x)
        return a == b

    def with_components(self, comps: Sequence[Component], corners=None, flat=None) -> LinkDiagram:
        return LinkDiagram(self.surface, tuple(comps),
                           self.corners if corners is None else tuple(corners),
                           self.flat if flat is None else flat)


def knot(surface: SurfacePresentation, passes: Iterable[tuple[str, str]], edges: Iterable[Word],
         corners: Iterable[tuple[str, str]], labeling: int = 0, flat: bool = False) -> LinkDiagram:
    """Single-component convenience constructor; passes are ``(role, crossing)`` pairs."""
    comp = Component(tuple(Pass(str(x), r) for r, x in passes), tuple(tuple(e) for e in edges), labeling)
    return LinkDiagram(surface, (comp,), tuple((str(x), b) for x, b in corners), flat)


def unknot(surface: SurfacePresentation, word: Word = (), labeling: int = 0) -> LinkDiagram:
    return LinkDiagram(surface, (Component((), (tuple(word),), labeling),), ())


# --- validation -------------------------------------------------------------

def validate(d: LinkDiagram) -> list[str]:
    problems = []
    ids = [x for x, _ in d.corners]
    if len(set(ids)) != len(ids):
        problems.append("crossing listed twice in corner data")
    for x, bit in d.corners:
        if bit not in (CCW, CW):
            problems.append(f"crossing {x}: corner bit {bit!r} is not ccw/cw")
    seen: dict[tuple[str, str], int] = {}
    if not d.components:
        problems.append("diagram has no components")
    for c, comp in enumerate(d.components):
        n = len(comp.passes)
        if comp.labeling not in (0, 1):
            problems.append(f"component {c}: labeling must be 0 or 1")
        if len(comp.edges) != max(n, 1):
            problems.append(f"component {c}: {n} passes but {len(comp.edges)} edge words")
        for p in comp.passes:
            if p.role not in (OVER, UNDER):
                problems.append(f"component {c}: bad role {p.role!r}")
            seen[(p.crossing, p.role)] = seen.get((p.crossing, p.role), 0) + 1
            if p.crossing not in d.corner:
                problems.append(f"component {c}: crossing {p.crossing} has no corner bit")
        for j, e in enumerate(comp.edges):
            for s, exp in e:
                if not d.surface.has(s):
                    problems.append(f"component {c} edge {j}: unknown generator {s!r}")
                if exp not in (1, -1):
                    problems.append(f"component {c} edge {j}: bad exponent {exp}")
    for key, count in seen.items():
        if count > 1:
            problems.append(f"crossing {key[0]}: {key[1]} pass appears {count} times")
    for x in ids:
        for role in (OVER, UNDER):
            if (x, role) not in seen:
                problems.append(f"crossing {x}: missing {role} pass")
    return problems


def check(d: LinkDiagram) -> LinkDiagram:
    problems = validate(d)
    if problems:
        raise DiagramError("; ".join(problems))
    return d


# --- orientation character --------------------------------------------------

def component_w1(d: LinkDiagram, c: int) -> int:
    return w1(d.components[c].closed_word, d.surface)


def is_pseudo_classical(d: LinkDiagram, c: int = 0) -> bool:
    return component_w1(d, c) == 0


def _require_pc(d: LinkDiagram, c: int) -> None:
    if not is_pseudo_classical(d, c):
        raise NotPseudoClassicalError(
            f"component {c} is an orientation-reversing loop; its 2-cabling is connected")


def twist_parity(d: LinkDiagram, c: int, position: int) -> int:
    """Orientation character of the arcs strictly before ``position``."""
    _require_pc(d, c)
    edges = d.components[c].edges
    return sum(w1(edges[j], d.surface) for j in range(position)) % 2


# --- signs --------------------------------------------------------------------

_TABLE = {
    (False, True): GaussianInt(1, 0),    # Right over Left
    (True, False): GaussianInt(-1, 0),   # Left over Right
    (False, False): GaussianInt(0, 1),   # Right over Right
    (True, True): GaussianInt(0, -1),    # Left over Left
}


def _is_left(on_left_side: bool, labeling: int, parity: int) -> bool:
    # The traveller's left cable is named Left iff labeling xor parity == 0.
    return on_left_side == ((labeling ^ parity) == 0)


def _raw_sign(d: LinkDiagram, x: str, mirror: bool = False) -> GaussianInt:
    co, po = d.locate[(x, OVER)]
    cu, pu = d.locate[(x, UNDER)]
    _require_pc(d, co)
    _require_pc(d, cu)
    over_faces_left = (d.corner[x] == CCW) != mirror
    a = _is_left(over_faces_left, d.components[co].labeling, d.parities[co][po])
    b = _is_left(not over_faces_left, d.components[cu].labeling, d.parities[cu][pu])
    return _TABLE[(a, b)]


def crossing_sign(d: LinkDiagram, x: str, *, mirror: bool = False) -> GaussianInt:
    """Sign in {1, -1, i, -i} read off the input crossing of the cable pattern at ``x``.

    ``mirror`` flips the global left/right side convention.
    """
    if d.flat:
        raise DiagramError("flat diagram has no over/under data; use sign_f1/sign_f2")
    if x not in d.corner:
        raise DiagramError(f"unknown crossing {x!r}")
    return _raw_sign(d, x, mirror)


def all_signs(d: LinkDiagram, *, mirror: bool = False) -> dict[str, GaussianInt]:
    return {x: _raw_sign(d, x, mirror) for x in d.crossings}


def flatten_sign_f1(z: GaussianInt) -> GaussianInt:
    return ONE if z.is_real_unit() else z


def sign_f1(d: LinkDiagram, x: str, *, mirror: bool = False) -> GaussianInt:
    """Flat self-intersection sign: real signs collapse to 1, imaginary ones survive.

    Uses whatever over/under assignment is stored; the value does not depend on it.
    """
    if not d.is_self_crossing(x):
        raise DiagramError(f"crossing {x} is not a self-intersection")
    return flatten_sign_f1(_raw_sign(d, x, mirror))


def flat_pair_sign(sign: GaussianInt, first_is_over: bool) -> GaussianInt:
    if not first_is_over and sign.is_real_unit():
        return -sign
    return sign


# --- loops --------------------------------------------------------------------

@dataclass(frozen=True)
class Loop:
    """Closed path along one component covering ``length`` consecutive edges from ``start``.

    A proper loop starts and ends at a crossing that is smoothed away, so its
    passes are the interior ones.  A whole loop is the entire component.
    """

    component: int
    start: int
    length: int
    whole: bool = False

    def edge_indices(self, d: LinkDiagram) -> list[int]:
        n = len(d.components[self.component].edges)
        return [(self.start + k) % n for k in range(self.length)]

    def positions(self, d: LinkDiagram) -> list[int]:
        n = d.n_passes(self.component)
        if self.whole:
            return list(range(n))
        return [(self.start + k) % n for k in range(1, self.length)]

    def word(self, d: LinkDiagram) -> Word:
        edges = d.components[self.component].edges
        return tuple(letter for j in self.edge_indices(d) for letter in edges[j])

    def rebased_word(self, d: LinkDiagram, position: int) -> Word:
        edges = d.components[self.component].edges
        idx = self.edge_indices(d)
        k = idx.index(position)
        return tuple(letter for j in idx[k:] + idx[:k] for letter in edges[j])


def component_loop(d: LinkDiagram, c: int) -> Loop:
    return Loop(c, 0, len(d.components[c].edges), whole=True)


def loops_at(d: LinkDiagram, x: str) -> tuple[Loop, Loop]:
    """``l1`` leaves along the over strand and returns along the under strand; ``l2`` the reverse."""
    if (x, OVER) not in d.locate:
        raise DiagramError(f"unknown crossing {x!r}")
    co, po = d.locate[(x, OVER)]
    cu, pu = d.locate[(x, UNDER)]
    if co != cu:
        raise DiagramError(f"crossing {x} joins two components; it has no loops")
    n = d.n_passes(co)
    return Loop(co, po, (pu - po) % n), Loop(co, pu, (po - pu) % n)


def _as_loop(d: LinkDiagram, curve: Loop | int) -> Loop:
    return curve if isinstance(curve, Loop) else component_loop(d, curve)


def mutual_crossings(d: LinkDiagram, first: Loop | int, second: Loop | int) -> list[tuple[str, bool]]:
    """Crossings with one pass on each curve, as ``(crossing, first curve goes over)``."""
    first, second = _as_loop(d, first), _as_loop(d, second)
    on1 = {d.pass_at(first.component, j) for j in first.positions(d)}
    on2 = {d.pass_at(second.component, j) for j in second.positions(d)}
    out = []
    for x in d.crossings:
        o, u = Pass(x, OVER), Pass(x, UNDER)
        if o in on1 and u in on2:
            out.append((x, True))
        elif u in on1 and o in on2:
            out.append((x, False))
    return out


def sign_f2(d: LinkDiagram, x: str, first: Loop | int, second: Loop | int, *,
            mirror: bool = False) -> GaussianInt:
    """Flat sign of ``x`` for the ordered pair of curves (first taken as the over curve)."""
    for y, first_over in mutual_crossings(d, first, second):
        if y == x:
            return flat_pair_sign(_raw_sign(d, x, mirror), first_over)
    raise DiagramError(f"crossing {x} is not a mutual crossing of the two curves")


def smooth(d: LinkDiagram, first: Loop | int, second: Loop | int, y: str) -> Word:
    """Word of the orientation-respecting smoothing at ``y``: first curve from y, then second."""
    first, second = _as_loop(d, first), _as_loop(d, second)
    for z, first_over in mutual_crossings(d, first, second):
        if z == y:
            r1, r2 = (OVER, UNDER) if first_over else (UNDER, OVER)
            p1 = d.locate[(y, r1)][1]
            p2 = d.locate[(y, r2)][1]
            return first.rebased_word(d, p1) + second.rebased_word(d, p2)
    raise DiagramError(f"crossing {y} is not a mutual crossing of the two curves")


def extract_subdiagram(d: LinkDiagram, loop: Loop) -> LinkDiagram:
    """The loop as a standalone flat one-component diagram.

    Crossings with both passes on the loop are kept with their corner bits;
    the other passes dissolve and their neighbouring words concatenate.
    """
    comp = d.components[loop.component]
    positions = loop.positions(d)
    on_loop = {comp.passes[j] for j in positions}
    kept = {p.crossing for p in on_loop
            if Pass(p.crossing, OVER) in on_loop and Pass(p.crossing, UNDER) in on_loop}
    if loop.whole:
        n = len(comp.passes)
        items: list = []
        for j in range(n):
            items.append(j)
            items.append(comp.edges[j])
        if not n:
            items.append(comp.edges[0])
        start_parity = 0
    else:
        idx = loop.edge_indices(d)
        items = [comp.edges[idx[0]]]
        for j, e in zip(positions, idx[1:]):
            items.append(j)
            items.append(comp.edges[e])
        start_parity = d.parities[loop.component][loop.start] if comp.passes else 0
    passes, words, first_pos = [], [], None
    pending: list = []
    lead: Word | None = None
    for item in items:
        if isinstance(item, int):
            if comp.passes[item].crossing in kept:
                if lead is None:
                    lead = tuple(pending)
                    first_pos = item
                else:
                    words.append(tuple(pending))
                passes.append(comp.passes[item])
                pending = []
        else:
            pending.extend(item)
    if lead is None:
        new = Component((), (tuple(pending),), comp.labeling ^ start_parity)
    else:
        words.append(tuple(pending) + lead)
        new = Component(tuple(passes), tuple(words),
                        comp.labeling ^ d.parities[loop.component][first_pos])
    corners = tuple((x, b) for x, b in d.corners if x in kept)
    return LinkDiagram(d.surface, (new,), corners, flat=True)


# --- symmetries -----------------------------------------------------------------

def _select(d: LinkDiagram, components) -> set[int]:
    if components is None:
        return set(range(len(d.components)))
    if isinstance(components, int):
        return {components}
    return set(components)


def relabel(d: LinkDiagram, components: int | Iterable[int] | None = None) -> LinkDiagram:
    chosen = _select(d, components)
    comps = [replace(c, labeling=c.labeling ^ 1) if i in chosen else c
             for i, c in enumerate(d.components)]
    return d.with_components(comps)


def reverse(d: LinkDiagram, components: int | Iterable[int] | None = None) -> LinkDiagram:
    """Reverse orientation of the chosen components, keeping which cable is named Left.

    The basepoint pass stays put.  A crossing whose disk frame is renumbered
    by an odd rotation (exactly one of its strands reversed) flips its corner bit.
    """
    chosen = _select(d, components)
    comps = []
    for i, comp in enumerate(d.components):
        if i not in chosen:
            comps.append(comp)
            continue
        n = len(comp.passes)
        if n == 0:
            comps.append(Component((), (inverse(comp.edges[0]),), comp.labeling ^ 1))
            continue
        passes = (comp.passes[0],) + tuple(reversed(comp.passes[1:]))
        edges = tuple(inverse(comp.edges[(n - 1 - k) % n]) for k in range(n))
        comps.append(Component(passes, edges, comp.labeling ^ 1))
    corners = []
    for x, bit in d.corners:
        co, cu = d.component_of(x)
        if (co in chosen) != (cu in chosen):
            bit = CW if bit == CCW else CCW
        corners.append((x, bit))
    return d.with_components(comps, corners)


def switch(d: LinkDiagram, x: str) -> LinkDiagram:
    """Exchange over and under at ``x``; renumbering the slots by one flips the corner bit."""
    if x not in d.corner:
        raise DiagramError(f"unknown crossing {x!r}")
    swap = {OVER: UNDER, UNDER: OVER}
    comps = [replace(c, passes=tuple(Pass(p.crossing, swap[p.role]) if p.crossing == x else p
                                     for p in c.passes))
             for c in d.components]
    corners = [(y, (CW if b == CCW else CCW) if y == x else b) for y, b in d.corners]
    return d.with_components(comps, corners)


def rotate_basepoint(d: LinkDiagram, c: int, k: int) -> LinkDiagram:
    """Move component ``c``'s basepoint to pass ``k`` without changing any sign."""
    comp = d.components[c]
    n = len(comp.passes)
    if n == 0 or k % n == 0:
        return d
    k %= n
    shift = d.parities[c][k]
    new = Component(comp.passes[k:] + comp.passes[:k], comp.edges[k:] + comp.edges[:k],
                    comp.labeling ^ shift)
    comps = list(d.components)
    comps[c] = new
    return d.with_components(comps)


def forget_over_under(d: LinkDiagram) -> LinkDiagram:
    return replace(d, flat=True)


def describe(d: LinkDiagram) -> str:
    parts = []
    for c, comp in enumerate(d.components):
        seq = []
        for p, e in zip(comp.passes, comp.edges):
            seq.append(f"{p.role[0]}{p.crossing}")
            seq.append(format_word(e))
        if not comp.passes:
            seq.append(format_word(comp.edges[0]))
        parts.append(f"C{c}(L{comp.labeling}): " + " ".join(seq))
    return "; ".join(parts)

