"""Explicit 2-cabling, used as an independent oracle for crossing signs.

Every crossing disk gets eight boundary points, two per slot, and each strand
through the disk becomes a pair of parallel chords.  Arcs between crossings
become bands: an orientation-compatible band reverses the counterclockwise
order of the two points from one disk to the next, a twisted band keeps it.
Cable components, the four crossings of each tile and their input/output
crossings are all found by tracing and by plane geometry.  No twist parities
are used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import GaussianInt
from .diagram import (CCW, CW, OVER, UNDER, Component, DiagramError, LinkDiagram,
                      NotPseudoClassicalError, Pass, is_pseudo_classical)
from .surface import w1

LEFT, RIGHT = "Left", "Right"

_SPREAD = math.radians(15)


def _point(k: int) -> tuple[float, float]:
    slot, half = divmod(k, 2)
    angle = math.pi / 2 * slot + (_SPREAD if half else -_SPREAD)
    return math.cos(angle), math.sin(angle)


def _slot_center(s: int) -> tuple[float, float]:
    angle = math.pi / 2 * (s % 4)
    return math.cos(angle), math.sin(angle)


def _dist(p, q) -> float:
    return math.hypot(p[0] - q[0], p[1] - q[1])


def _segment_param(p1, p2, q1, q2):
    """Parameters (t, u) of the proper intersection of segments p1p2 and q1q2, or None."""
    rx, ry = p2[0] - p1[0], p2[1] - p1[1]
    sx, sy = q2[0] - q1[0], q2[1] - q1[1]
    den = rx * sy - ry * sx
    if abs(den) < 1e-12:
        return None
    qpx, qpy = q1[0] - p1[0], q1[1] - p1[1]
    t = (qpx * sy - qpy * sx) / den
    u = (qpx * ry - qpy * rx) / den
    if 0 < t < 1 and 0 < u < 1:
        return t, u
    return None


def _in_slot(role: str, corner: str) -> int:
    if role == OVER:
        return 0
    return 1 if corner == CCW else 3


def _parallel_chords(s_in: int) -> list[tuple[int, int]]:
    s_out = (s_in + 2) % 4
    a, b = 2 * s_in, 2 * s_in + 1
    c, d = 2 * s_out, 2 * s_out + 1
    for pairing in ([(a, c), (b, d)], [(a, d), (b, c)]):
        (p1, p2), (q1, q2) = pairing
        if _segment_param(_point(p1), _point(p2), _point(q1), _point(q2)) is None:
            return pairing
    raise AssertionError("no parallel chord pairing")


@dataclass(frozen=True)
class CableDiagram:
    diagram: LinkDiagram
    inp: dict
    out: dict
    names: tuple[tuple[int, str], ...]
    """``names[k] = (original component, Left|Right)`` for cable component ``k``."""


def explicit_cable(d: LinkDiagram) -> CableDiagram:
    for c in range(len(d.components)):
        if not is_pseudo_classical(d, c):
            raise NotPseudoClassicalError(
                f"component {c} is orientation-reversing: its 2-cabling is a single knot "
                "running twice around it, not a 2-component link")
    # chord endpoints: (crossing, in_point) -> out_point, for the strand's role
    chord_out: dict[tuple[str, int], int] = {}
    chord_role: dict[tuple[str, int], str] = {}
    tiles: dict[str, dict[str, list[tuple[int, int]]]] = {}
    for x in d.crossings:
        tiles[x] = {}
        for role in (OVER, UNDER):
            s_in = _in_slot(role, d.corner[x])
            chords = []
            for p, q in _parallel_chords(s_in):
                pin, pout = (p, q) if p // 2 == s_in else (q, p)
                chord_out[(x, pin)] = pout
                chord_role[(x, pin)] = role
                chords.append((pin, pout))
            tiles[x][role] = chords

    # band connections: (crossing, out_point) -> (crossing, in_point), plus the band word
    band: dict[tuple[str, int], tuple[str, int, tuple]] = {}
    for comp in d.components:
        n = len(comp.passes)
        for j in range(n):
            p, q = comp.passes[j], comp.passes[(j + 1) % n]
            a = (_in_slot(p.role, d.corner[p.crossing]) + 2) % 4
            b = _in_slot(q.role, d.corner[q.crossing])
            word = comp.edges[j]
            if w1(word, d.surface) == 0:
                pairs = [(2 * a + 1, 2 * b), (2 * a, 2 * b + 1)]
            else:
                pairs = [(2 * a + 1, 2 * b + 1), (2 * a, 2 * b)]
            for u, v in pairs:
                band[(p.crossing, u)] = (q.crossing, v, word)

    # tile crossings and their order along each chord
    tile_ids: dict[tuple[str, int, int], str] = {}
    order_on_chord: dict[tuple[str, int], list[str]] = {}
    corners: list[tuple[str, str]] = []
    inp, out = {}, {}
    for x in d.crossings:
        params = {}
        for oi, (o_in, o_out) in enumerate(tiles[x][OVER]):
            for ui, (u_in, u_out) in enumerate(tiles[x][UNDER]):
                hit = _segment_param(_point(o_in), _point(o_out), _point(u_in), _point(u_out))
                if hit is None:
                    raise AssertionError("over and under cables must cross")
                tid = f"{x}:{2 * oi + ui}"
                tile_ids[(x, o_in, u_in)] = tid
                params[tid] = (o_in, u_in, hit)
                do = (_point(o_out)[0] - _point(o_in)[0], _point(o_out)[1] - _point(o_in)[1])
                du = (_point(u_out)[0] - _point(u_in)[0], _point(u_out)[1] - _point(u_in)[1])
                corners.append((tid, CCW if do[0] * du[1] - do[1] * du[0] > 0 else CW))
        for o_in, _ in tiles[x][OVER]:
            ts = sorted((v[2][0], k) for k, v in params.items() if v[0] == o_in)
            order_on_chord[(x, o_in)] = [k for _, k in ts]
        for u_in, _ in tiles[x][UNDER]:
            ts = sorted((v[2][1], k) for k, v in params.items() if v[1] == u_in)
            order_on_chord[(x, u_in)] = [k for _, k in ts]
        firsts = [k for k, (o, u, _) in params.items()
                  if order_on_chord[(x, o)][0] == k and order_on_chord[(x, u)][0] == k]
        lasts = [k for k, (o, u, _) in params.items()
                 if order_on_chord[(x, o)][-1] == k and order_on_chord[(x, u)][-1] == k]
        if len(firsts) != 1 or len(lasts) != 1:
            raise AssertionError(f"tile at {x} has no unique input/output crossing")
        inp[x], out[x] = firsts[0], lasts[0]

    # trace cable components from each basepoint
    comps: list[Component] = []
    names: list[tuple[int, str]] = []
    used: set[tuple[str, int]] = set()
    for c, comp in enumerate(d.components):
        if not comp.passes:
            for name in (LEFT, RIGHT):
                comps.append(Component((), comp.edges, 0))
                names.append((c, name))
            continue
        p0 = comp.passes[0]
        s0 = _in_slot(p0.role, d.corner[p0.crossing])
        ahead = _slot_center(s0 + 1)
        left_pt = min((2 * s0, 2 * s0 + 1), key=lambda k: _dist(_point(k), ahead))
        right_pt = 2 * s0 + 1 if left_pt == 2 * s0 else 2 * s0
        first, second = (left_pt, right_pt) if comp.labeling == 0 else (right_pt, left_pt)
        for start, name in ((first, LEFT), (second, RIGHT)):
            passes, edges = [], []
            pending: tuple = ()
            x, pin = p0.crossing, start
            while True:
                if (x, pin) in used:
                    raise AssertionError("cable strands overlap")
                used.add((x, pin))
                role = chord_role[(x, pin)]
                for tid in order_on_chord[(x, pin)]:
                    if passes:
                        edges.append(pending)
                    passes.append(Pass(tid, role))
                    pending = ()
                nx, npin, word = band[(x, chord_out[(x, pin)])]
                pending = word
                x, pin = nx, npin
                if (x, pin) == (p0.crossing, start):
                    edges.append(pending)
                    break
                if (x, pin) in used:
                    raise AssertionError("cable component did not close at its basepoint")
            comps.append(Component(tuple(passes), tuple(edges), 0))
            names.append((c, name))
    if len(used) != 2 * sum(len(cp.passes) for cp in d.components):
        raise AssertionError("some cable strands were never traversed")
    cable = LinkDiagram(d.surface, tuple(comps), tuple(corners))
    return CableDiagram(cable, inp, out, tuple(names))


_DEF_TABLE = {
    (RIGHT, LEFT): GaussianInt(1, 0),
    (LEFT, RIGHT): GaussianInt(-1, 0),
    (RIGHT, RIGHT): GaussianInt(0, 1),
    (LEFT, LEFT): GaussianInt(0, -1),
}


def oracle_sign(cable: CableDiagram, x: str) -> GaussianInt:
    """Which named cable goes over the other at ``inp(x)``."""
    if x not in cable.inp:
        raise DiagramError(f"unknown crossing {x!r}")
    t = cable.inp[x]
    over_comp = cable.diagram.locate[(t, OVER)][0]
    under_comp = cable.diagram.locate[(t, UNDER)][0]
    return _DEF_TABLE[(cable.names[over_comp][1], cable.names[under_comp][1])]
