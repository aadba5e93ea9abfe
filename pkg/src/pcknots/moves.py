"""Reidemeister rewrites on decorated Gauss codes.

Moves act only where the local arcs they create or consume carry the empty
word, so a move happens inside a disk whose frame agrees with the frames of
all crossings involved.  Corner bits of new crossings come from the planar
picture of the move; the R3 applicability table is generated from
arrangements of three lines in the plane.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field, replace
from functools import lru_cache
from typing import Any

from .diagram import (CCW, CW, OVER, UNDER, Component, DiagramError, LinkDiagram, Pass,
                      all_signs, rotate_basepoint, switch, _raw_sign)
from .surface import Word, inverse, reduce_word, w1


class MoveError(DiagramError):
    pass


def _other(bit: str) -> str:
    return CW if bit == CCW else CCW


def fresh_id(d: LinkDiagram) -> str:
    used = set(d.crossings)
    k = len(used) + 1
    while str(k) in used:
        k += 1
    return str(k)


def _splice(d: LinkDiagram, c: int, e: int, items: list) -> Component:
    """Replace edge ``e`` of component ``c`` by ``items = [w0, P1, w1, ..., Pm, wm]``."""
    comp = d.components[c]
    words = [tuple(w) for w in items[0::2]]
    new = list(items[1::2])
    n = len(comp.passes)
    if n == 0:
        edges = tuple(words[1:-1]) + (words[-1] + words[0],)
        return Component(tuple(new), edges, comp.labeling ^ w1(words[0], d.surface))
    passes = comp.passes[:e + 1] + tuple(new) + comp.passes[e + 1:]
    edges = comp.edges[:e] + tuple(words) + comp.edges[e + 1:]
    return Component(passes, edges, comp.labeling)


def _replace_comp(d: LinkDiagram, c: int, comp: Component, corners=None) -> LinkDiagram:
    comps = list(d.components)
    comps[c] = comp
    return d.with_components(comps, corners)


def _split(word: Word, k: int) -> tuple[Word, Word]:
    if not 0 <= k <= len(word):
        raise MoveError(f"split point {k} outside word of length {len(word)}")
    return word[:k], word[k:]


# --- R1 ---------------------------------------------------------------------------

def r1_insert(d: LinkDiagram, component: int, edge: int, split: int, corner: str,
              over_first: bool, new_id: str | None = None) -> LinkDiagram:
    """Add a curl on ``edge`` after ``split`` letters; the curl's own loop is empty."""
    comp = d.components[component]
    if not 0 <= edge < len(comp.edges):
        raise MoveError(f"no edge {edge} on component {component}")
    x = new_id or fresh_id(d)
    u, v = _split(comp.edges[edge], split)
    r1, r2 = (OVER, UNDER) if over_first else (UNDER, OVER)
    new = _splice(d, component, edge, [u, Pass(x, r1), (), Pass(x, r2), v])
    return _replace_comp(d, component, new, d.corners + ((x, corner),))


def _consecutive(d: LinkDiagram, p: Pass, q: Pass, strict: bool = False) -> tuple[int, int] | None:
    """``(component, i)`` if ``q`` follows ``p`` along an arc whose word reduces to 1.

    ``strict`` asks for the literally empty word.
    """
    cp, ip = d.locate[(p.crossing, p.role)]
    cq, iq = d.locate[(q.crossing, q.role)]
    n = d.n_passes(cp)
    if cp != cq or (ip + 1) % n != iq or n < 2:
        return None
    w = d.components[cp].edges[ip]
    if (w if strict else reduce_word(w)):
        return None
    return cp, ip


def _adjacent(d: LinkDiagram, p: Pass, q: Pass):
    """Either order, preferring literally empty arcs so that removals undo insertions."""
    for strict in (True, False):
        hit = _consecutive(d, p, q, strict) or _consecutive(d, q, p, strict)
        if hit:
            return hit
    return None


def _join(left: Word, right: Word, seam) -> Word:
    """Concatenate the arcs on both sides of an excised pair.

    ``seam`` is None (plain), ``"reduce"`` (free cancellation at the junction)
    or a band word ``g`` expected as ``left = ..g`` and ``right = g^-1..``.
    """
    if seam is None:
        return left + right
    if seam == "reduce":
        left, right = list(left), list(right)
        while left and right and left[-1][0] == right[0][0] and left[-1][1] == -right[0][1]:
            left.pop()
            right.pop(0)
        return tuple(left) + tuple(right)
    g = tuple(seam)
    if left[len(left) - len(g):] != g or right[:len(g)] != inverse(g):
        raise MoveError("arc words do not carry the given band")
    return left[:len(left) - len(g)] + right[len(g):]


def _close(d: LinkDiagram, word: Word, labeling: int, seam, rebase: int) -> Component:
    """Zero-crossing component left after the last pair is excised.

    ``word`` runs from the excised pair back to it; the basepoint moves along
    with any letters cut at the front, then ``rebase`` letters are rotated
    from the back to the front.
    """
    w = list(word)
    if seam == "reduce":
        while len(w) >= 2 and w[-1][0] == w[0][0] and w[-1][1] == -w[0][1]:
            labeling ^= w1(w[:1], d.surface)
            w = w[1:-1]
    elif seam is not None:
        g = tuple(seam)
        if tuple(w[:len(g)]) != inverse(g) or tuple(w[len(w) - len(g):]) != g:
            raise MoveError("arc words do not carry the given band")
        labeling ^= w1(g, d.surface)
        w = w[len(g):len(w) - len(g)]
    if not 0 <= rebase <= len(w):
        raise MoveError(f"cannot move the basepoint back by {rebase} letters")
    if rebase:
        moved = w[len(w) - rebase:]
        labeling ^= w1(moved, d.surface)
        w = moved + w[:len(w) - rebase]
    return Component((), (tuple(w),), labeling)


def _excise(d: LinkDiagram, c: int, i: int, seam=None, rebase: int = 0) -> LinkDiagram:
    """Drop passes ``i`` and ``i + 1`` of component ``c`` (the arc between them is empty)."""
    n = d.n_passes(c)
    comp = d.components[c]
    if n == 2:
        return _replace_comp(d, c, _close(d, comp.edges[(i + 1) % 2], comp.labeling, seam, rebase))
    if i == 0 or i == n - 1:
        d = rotate_basepoint(d, c, i - 1)
        i = 1
    comp = d.components[c]
    merged = _join(comp.edges[i - 1], comp.edges[i + 1], seam)
    new = Component(comp.passes[:i] + comp.passes[i + 2:],
                    comp.edges[:i - 1] + (merged,) + comp.edges[i + 2:], comp.labeling)
    return _replace_comp(d, c, new)


def curls(d: LinkDiagram) -> list[str]:
    out = []
    for x in d.crossings:
        o, u = Pass(x, OVER), Pass(x, UNDER)
        if _adjacent(d, o, u):
            out.append(x)
    return out


def r1_remove(d: LinkDiagram, x: str, rebase: int = 0) -> LinkDiagram:
    """Delete a curl.  ``rebase`` only matters when the component is left without
    crossings: it moves the new basepoint back by that many letters."""
    o, u = Pass(x, OVER), Pass(x, UNDER)
    hit = _adjacent(d, o, u)
    if hit is None:
        raise MoveError(f"crossing {x} is not a removable curl")
    c, i = hit
    d = _excise(d, c, i, rebase=rebase)
    return d.with_components(d.components, tuple(cb for cb in d.corners if cb[0] != x))


# --- R2 ---------------------------------------------------------------------------

def r2_insert(d: LinkDiagram, comp_a: int, edge_a: int, split_a: int,
              comp_b: int, edge_b: int, split_b: int, band: Word = (),
              orientation: str = "parallel", over: str = "a", corner: str = CCW,
              ids: tuple[str, str] | None = None) -> LinkDiagram:
    """Push strand B along ``band`` over or under strand A, creating a bigon.

    A meets the new crossings in the order x1, x2; B meets them in the same
    order when ``orientation == "parallel"`` and reversed otherwise.  The two
    crossings get opposite corner bits, ``corner`` being that of x1.
    """
    if (comp_a, edge_a) == (comp_b, edge_b):
        raise MoveError("R2 needs two different edges")
    if orientation not in ("parallel", "antiparallel") or over not in ("a", "b"):
        raise MoveError("bad R2 parameters")
    for c, e in ((comp_a, edge_a), (comp_b, edge_b)):
        if not (0 <= c < len(d.components) and 0 <= e < len(d.components[c].edges)):
            raise MoveError(f"no edge {e} on component {c}")
    if ids is None:
        x1 = fresh_id(d)
        x2 = fresh_id(d.with_components(d.components, d.corners + ((x1, CCW),)))
    else:
        x1, x2 = ids
    ra, rb = (OVER, UNDER) if over == "a" else (UNDER, OVER)
    u, v = _split(d.components[comp_a].edges[edge_a], split_a)
    p, q = _split(d.components[comp_b].edges[edge_b], split_b)
    band = tuple(band)
    first, second = (x1, x2) if orientation == "parallel" else (x2, x1)
    items_a = [u, Pass(x1, ra), (), Pass(x2, ra), v]
    items_b = [p + band, Pass(first, rb), (), Pass(second, rb), inverse(band) + q]
    jobs = sorted([(comp_a, edge_a, items_a), (comp_b, edge_b, items_b)],
                  key=lambda t: (t[0], t[1]), reverse=True)
    out = d
    for c, e, items in jobs:
        out = _replace_comp(out, c, _splice(out, c, e, items))
    out = out.with_components(out.components, d.corners + ((x1, corner), (x2, _other(corner))))
    if not out.flat:
        s1, s2 = _raw_sign(out, x1), _raw_sign(out, x2)
        if s1 != -s2:
            raise AssertionError(f"R2 template broke the bigon law: {s1} vs {s2}")
    return out


def _bigon_pairs(d: LinkDiagram, x1: str, x2: str):
    pairs = []
    for role in (OVER, UNDER):
        p, q = Pass(x1, role), Pass(x2, role)
        hit = _adjacent(d, p, q)
        if hit is None:
            return None
        pairs.append(hit)
    return pairs


def is_bigon(d: LinkDiagram, x1: str, x2: str) -> bool:
    if x1 == x2 or d.corner[x1] == d.corner[x2]:
        return False
    return _bigon_pairs(d, x1, x2) is not None


def bigons(d: LinkDiagram) -> list[tuple[str, str]]:
    xs = d.crossings
    return [(a, b) for i, a in enumerate(xs) for b in xs[i + 1:] if is_bigon(d, a, b)]


def _carries_band(d: LinkDiagram, x1: str, x2: str, role: str, band: Word) -> bool:
    p, q = Pass(x1, role), Pass(x2, role)
    c, i = _adjacent(d, p, q)
    comp = d.components[c]
    n = len(comp.passes)
    left, right = comp.edges[(i - 1) % n], comp.edges[(i + 1) % n]
    g = tuple(band)
    return left[len(left) - len(g):] == g and right[:len(g)] == inverse(g)


def r2_remove(d: LinkDiagram, x1: str, x2: str, band: Word | None = None,
              band_role: str | None = None, rebase: tuple[int, int] = (0, 0)) -> LinkDiagram:
    """Delete a bigon.

    The strand that was pushed along ``band`` (``band_role``, found from the
    arc words when omitted) gets the band cut off, which restores the code
    from before :func:`r2_insert` verbatim.  Without a band both seams are
    only freely reduced.  ``rebase`` gives, for the over and the under strand,
    how far to move the basepoint back if that component loses all crossings.
    """
    if not is_bigon(d, x1, x2):
        raise MoveError(f"{x1}, {x2} do not bound a removable bigon")
    if band is not None and band_role is None:
        fits = [r for r in (UNDER, OVER) if _carries_band(d, x1, x2, r, band)]
        if not fits:
            raise MoveError("arc words do not carry the given band")
        band_role = fits[0]
    for role, k in zip((OVER, UNDER), rebase):
        if band is None:
            seam = "reduce"
        else:
            seam = tuple(band) if role == band_role else None
        p, q = Pass(x1, role), Pass(x2, role)
        c, i = _adjacent(d, p, q)
        d = _excise(d, c, i, seam, k)
    return d.with_components(d.components, tuple(cb for cb in d.corners if cb[0] not in (x1, x2)))


# --- R3 ---------------------------------------------------------------------------

def _cross(a, b) -> float:
    return a[0] * b[1] - a[1] * b[0]


def _line_hit(p, dp, q, dq):
    den = _cross(dp, dq)
    w = (q[0] - p[0], q[1] - p[1])
    return _cross(w, dq) / den, _cross(w, dp) / den


@lru_cache(maxsize=None)
def r3_table() -> frozenset:
    """Local R3 patterns realized by three lines (top, middle, bottom) in the plane.

    A pattern is ``(orders, bits)``: for each strand, whether it meets its
    first-listed crossing first (T: TM before TB, M: TM before MB,
    B: TB before MB), and the corner bits of TM, TB, MB.
    """
    rng = random.Random(0)
    seen = set()
    for _ in range(4000):
        pts = [(rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(3)]
        angles = [rng.uniform(0, 2 * math.pi) for _ in range(3)]
        dirs = [(math.cos(a), math.sin(a)) for a in angles]
        try:
            t_tm, m_tm = _line_hit(pts[0], dirs[0], pts[1], dirs[1])
            t_tb, b_tb = _line_hit(pts[0], dirs[0], pts[2], dirs[2])
            m_mb, b_mb = _line_hit(pts[1], dirs[1], pts[2], dirs[2])
        except ZeroDivisionError:
            continue
        orders = (t_tm < t_tb, m_tm < m_mb, b_tb < b_mb)
        bit = lambda up, lo: CCW if _cross(dirs[up], dirs[lo]) > 0 else CW
        seen.add((orders, (bit(0, 1), bit(0, 2), bit(1, 2))))
    return frozenset(seen)


@dataclass(frozen=True)
class Triangle:
    tm: str
    tb: str
    mb: str
    sides: tuple[tuple[int, int], ...]   # (component, first position) for T, M, B


def _sides(d: LinkDiagram) -> list[tuple[int, int, Pass, Pass]]:
    out = []
    for c, comp in enumerate(d.components):
        n = len(comp.passes)
        if n < 2:
            continue
        for i in range(n):
            p, q = comp.passes[i], comp.passes[(i + 1) % n]
            if p.crossing != q.crossing and not reduce_word(comp.edges[i]):
                out.append((c, i, p, q))
    return out


def _classify(d: LinkDiagram, sides) -> Triangle | None:
    xs = {s[2].crossing for s in sides} | {s[3].crossing for s in sides}
    if len(xs) != 3:
        return None
    used = [(s[2].crossing, s[2].role) for s in sides] + [(s[3].crossing, s[3].role) for s in sides]
    if len(set(used)) != 6:
        return None
    by_kind = {}
    for s in sides:
        roles = {s[2].role, s[3].role}
        kind = "T" if roles == {OVER} else "B" if roles == {UNDER} else "M"
        by_kind.setdefault(kind, []).append(s)
    if sorted(by_kind) != ["B", "M", "T"] or any(len(v) != 1 for v in by_kind.values()):
        return None
    t, m, b = by_kind["T"][0], by_kind["M"][0], by_kind["B"][0]
    tx = {t[2].crossing, t[3].crossing}
    mx = {m[2].crossing, m[3].crossing}
    bx = {b[2].crossing, b[3].crossing}
    (tm,), (tb,), (mb,) = tx & mx, tx & bx, mx & bx
    # M must be under at TM and over at MB
    m_roles = {m[2].crossing: m[2].role, m[3].crossing: m[3].role}
    if m_roles.get(tm) != UNDER or m_roles.get(mb) != OVER:
        return None
    return Triangle(tm, tb, mb, ((t[0], t[1]), (m[0], m[1]), (b[0], b[1])))


def _pattern(d: LinkDiagram, tri: Triangle):
    first = lambda side: d.components[side[0]].passes[side[1]].crossing
    ts, ms, bs = tri.sides
    orders = (first(ts) == tri.tm, first(ms) == tri.tm, first(bs) == tri.tb)
    return orders, (d.corner[tri.tm], d.corner[tri.tb], d.corner[tri.mb])


def triangles(d: LinkDiagram) -> list[Triangle]:
    sides = _sides(d)
    out = []
    for i in range(len(sides)):
        for j in range(i + 1, len(sides)):
            for k in range(j + 1, len(sides)):
                tri = _classify(d, (sides[i], sides[j], sides[k]))
                if tri is not None and _pattern(d, tri) in r3_table():
                    out.append(tri)
    return out


def _swap_sides(d: LinkDiagram, tri: Triangle) -> LinkDiagram:
    comps = list(d.components)
    for c, i in tri.sides:
        comp = comps[c]
        n = len(comp.passes)
        passes = list(comp.passes)
        passes[i], passes[(i + 1) % n] = passes[(i + 1) % n], passes[i]
        comps[c] = replace(comp, passes=tuple(passes))
    return d.with_components(comps)


def find_triangle(d: LinkDiagram, crossings) -> Triangle:
    want = set(crossings)
    for tri in triangles(d):
        if {tri.tm, tri.tb, tri.mb} == want:
            return tri
    raise MoveError(f"crossings {sorted(want)} do not form an R3 triangle")


def r3_apply(d: LinkDiagram, crossings) -> LinkDiagram:
    """Slide one strand across the crossing of the other two.

    Each strand's two passes swap order; crossings keep their corner bits.
    """
    tri = find_triangle(d, crossings)
    before = all_signs(d) if not d.flat else None
    out = _swap_sides(d, tri)
    after_tri = [t for t in triangles(out) if {t.tm, t.tb, t.mb} == {tri.tm, tri.tb, tri.mb}]
    if not after_tri:
        raise AssertionError("R3 result is not an R3 configuration")
    if before is not None:
        after = all_signs(out)
        if any(before[x] != after[x] for x in (tri.tm, tri.tb, tri.mb)):
            raise AssertionError("R3 changed a sign")
    return out


# --- flat moves ---------------------------------------------------------------------

def flat_triangles(d: LinkDiagram) -> list[tuple[frozenset, tuple[str, ...]]]:
    """Triangles of the underlying curve, each with the crossings to switch to realize it as R3."""
    sides = _sides(d)
    out = []
    seen = set()
    for i in range(len(sides)):
        for j in range(i + 1, len(sides)):
            for k in range(j + 1, len(sides)):
                trio = (sides[i], sides[j], sides[k])
                xs = frozenset(s[2].crossing for s in trio) | frozenset(s[3].crossing for s in trio)
                if len(xs) != 3:
                    continue
                for flips in _flip_sets(sorted(xs)):
                    e = d
                    for x in flips:
                        e = switch(e, x)
                    if any(True for t in _at(e, xs)):
                        key = (xs, flips)
                        if key not in seen:
                            seen.add(key)
                            out.append(key)
                        break
    return out


def _flip_sets(xs):
    return [tuple(x for x, bit in zip(xs, (m >> 0 & 1, m >> 1 & 1, m >> 2 & 1)) if bit)
            for m in range(8)]


def _at(d: LinkDiagram, xs) -> list[Triangle]:
    return [t for t in triangles(d) if {t.tm, t.tb, t.mb} == set(xs)]


def flat_r3_apply(d: LinkDiagram, crossings, flips: tuple[str, ...]) -> LinkDiagram:
    e = d
    for x in flips:
        e = switch(e, x)
    e = r3_apply(e, crossings)
    for x in flips:
        e = switch(e, x)
    return e


# --- move records -------------------------------------------------------------------

@dataclass(frozen=True)
class MoveInstance:
    kind: str
    params: dict = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        return {"kind": self.kind, **self.params}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> MoveInstance:
        data = dict(data)
        return cls(data.pop("kind"), data)


def _word_param(w) -> Word:
    return tuple((s, e) for s, e in w)


def apply_move(d: LinkDiagram, move: MoveInstance) -> LinkDiagram:
    p = move.params
    if move.kind == "R1+":
        return r1_insert(d, p["component"], p["edge"], p["split"], p["corner"], p["over_first"],
                         p.get("id"))
    if move.kind == "R1-":
        return r1_remove(d, p["crossing"], p.get("rebase", 0))
    if move.kind == "R2+":
        return r2_insert(d, p["comp_a"], p["edge_a"], p["split_a"], p["comp_b"], p["edge_b"],
                         p["split_b"], _word_param(p["band"]), p["orientation"], p["over"],
                         p["corner"], tuple(p["ids"]) if p.get("ids") else None)
    if move.kind == "R2-":
        band = p.get("band")
        return r2_remove(d, p["x1"], p["x2"], None if band is None else _word_param(band),
                         p.get("band_role"), tuple(p.get("rebase", (0, 0))))
    if move.kind == "R3":
        if d.flat:
            return flat_r3_apply(d, p["crossings"], tuple(p.get("flips", ())))
        return r3_apply(d, p["crossings"])
    if move.kind == "switch":
        if not d.flat:
            raise MoveError("crossing changes are only moves of flat diagrams")
        return switch(d, p["crossing"])
    raise MoveError(f"unknown move kind {move.kind!r}")


def random_move(rng: random.Random, d: LinkDiagram, *, max_band: int = 2) -> MoveInstance:
    """Draw an applicable move: insertions always apply, removals and R3 when available."""
    options = ["R1+", "R2+"]
    removable_curls = curls(d)
    removable_bigons = bigons(d)
    if d.flat:
        tris = flat_triangles(d)
        tri_moves = [{"crossings": sorted(xs), "flips": list(fl)} for xs, fl in tris]
    else:
        tri_moves = [{"crossings": sorted((t.tm, t.tb, t.mb))} for t in triangles(d)]
    if removable_curls:
        options += ["R1-"] * 2
    if removable_bigons:
        options += ["R2-"] * 2
    if tri_moves:
        options += ["R3"] * 4
    if d.flat and d.crossings:
        options.append("switch")
    kind = rng.choice(options)
    if kind == "R1+":
        c = rng.randrange(len(d.components))
        e = rng.randrange(len(d.components[c].edges))
        return MoveInstance(kind, {"component": c, "edge": e,
                                   "split": rng.randint(0, len(d.components[c].edges[e])),
                                   "corner": rng.choice((CCW, CW)),
                                   "over_first": rng.random() < 0.5})
    if kind == "R1-":
        return MoveInstance(kind, {"crossing": rng.choice(removable_curls)})
    if kind == "R2+":
        edges = [(c, e) for c, comp in enumerate(d.components) for e in range(len(comp.edges))]
        if len(edges) < 2:
            # a one-edge curve first needs a curl to have two distinct edges
            return random_move_r1(rng, d)
        (ca, ea), (cb, eb) = rng.sample(edges, 2)
        gens = d.surface.symbols
        band = [[rng.choice(gens), rng.choice((1, -1))] for _ in range(rng.randint(0, max_band))]
        return MoveInstance(kind, {
            "comp_a": ca, "edge_a": ea, "split_a": rng.randint(0, len(d.components[ca].edges[ea])),
            "comp_b": cb, "edge_b": eb, "split_b": rng.randint(0, len(d.components[cb].edges[eb])),
            "band": band, "orientation": rng.choice(("parallel", "antiparallel")),
            "over": rng.choice(("a", "b")), "corner": rng.choice((CCW, CW))})
    if kind == "R2-":
        x1, x2 = rng.choice(removable_bigons)
        return MoveInstance(kind, {"x1": x1, "x2": x2})
    if kind == "R3":
        return MoveInstance(kind, rng.choice(tri_moves))
    return MoveInstance("switch", {"crossing": rng.choice(d.crossings)})


def random_move_r1(rng: random.Random, d: LinkDiagram) -> MoveInstance:
    c = rng.randrange(len(d.components))
    e = rng.randrange(len(d.components[c].edges))
    return MoveInstance("R1+", {"component": c, "edge": e,
                                "split": rng.randint(0, len(d.components[c].edges[e])),
                                "corner": rng.choice((CCW, CW)), "over_first": rng.random() < 0.5})


# --- fuzz driver --------------------------------------------------------------------

KNOT_CHECKS = ("delta", "delta0", "deltaH", "bracket_delta", "affine_index")
FLAT_CHECKS = ("flat_delta",)
LINK_CHECKS = ("linking",)


@dataclass(frozen=True)
class Comparison:
    invariant: str
    before_raw: Any
    before_canonical: Any
    after_raw: Any
    after_canonical: Any

    @property
    def passed(self) -> bool:
        return self.before_canonical == self.after_canonical


@dataclass
class FuzzCase:
    seed: int
    mode: str
    start: LinkDiagram
    moves: list[MoveInstance]
    comparisons: list[Comparison]
    error: str | None = None

    @property
    def passed(self) -> bool:
        return self.error is None and all(c.passed for c in self.comparisons)


@dataclass
class FuzzReport:
    seed: int
    cases: list[FuzzCase]

    @property
    def failures(self) -> list[FuzzCase]:
        return [c for c in self.cases if not c.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def counts(self) -> dict[str, tuple[int, int]]:
        """``invariant -> (passed, total)`` over all comparisons."""
        out: dict[str, list[int]] = {}
        for case in self.cases:
            for comp in case.comparisons:
                slot = out.setdefault(comp.invariant, [0, 0])
                slot[0] += comp.passed
                slot[1] += 1
        return {k: (v[0], v[1]) for k, v in sorted(out.items())}


def checks_for(mode: str) -> tuple[str, ...]:
    return {"knot": KNOT_CHECKS, "flat": FLAT_CHECKS, "link": LINK_CHECKS}[mode]


def invariant_values(d: LinkDiagram, names) -> dict[str, tuple[Any, Any]]:
    from . import invariants as inv
    out = {}
    for name in names:
        if name == "linking":
            raw = inv.linking(d, 0, 1)
        else:
            raw = inv.compute(name, d)
        out[name] = (raw, inv.canonical(name, raw))
    return out


def _start_diagram(rng: random.Random, mode: str, max_crossings: int, surface=None) -> LinkDiagram:
    from .generate import plant_triangle, random_diagram
    n = rng.randint(0, max_crossings)
    if mode == "link":
        d = random_diagram(rng, max(n, 1), surface, n_components=2)
    else:
        d = random_diagram(rng, n, surface, flat=(mode == "flat"))
    if rng.random() < 0.5:
        d = plant_triangle(rng, d)
    return d


def run_case(seed: int, mode: str = "knot", max_moves: int = 10, max_crossings: int = 4,
             surface=None, start: LinkDiagram | None = None) -> FuzzCase:
    """One diagram, one random move sequence, checked after every move.

    The recorded moves stop at the first failing step, so the trace is the
    shortest prefix that reproduces the failure.
    """
    rng = random.Random(seed)
    d0 = start if start is not None else _start_diagram(rng, mode, max_crossings, surface)
    names = checks_for(mode)
    before = invariant_values(d0, names)
    case = FuzzCase(seed, mode, d0, [], [])
    d = d0
    for _ in range(rng.randint(1, max_moves)):
        move = random_move(rng, d)
        case.moves.append(move)
        try:
            d = apply_move(d, move)
            after = invariant_values(d, names)
        except Exception as exc:  # a template self-check or invariant crash is a failure
            case.error = f"{type(exc).__name__}: {exc}"
            return case
        case.comparisons = [Comparison(n, *before[n], *after[n]) for n in names]
        if not case.passed:
            return case
    return case


def fuzz(seed: int, n_diagrams: int, max_moves: int, *, mode: str = "knot",
         max_crossings: int = 4, surface=None) -> FuzzReport:
    cases = [run_case(seed * 1_000_003 + k, mode, max_moves, max_crossings, surface)
             for k in range(n_diagrams)]
    return FuzzReport(seed, cases)


def replay(start: LinkDiagram, moves) -> list[LinkDiagram]:
    """Apply recorded moves in order; returns every intermediate diagram."""
    out = [start]
    for m in moves:
        out.append(apply_move(out[-1], m if isinstance(m, MoveInstance) else MoveInstance.from_json(m)))
    return out
