"""Line-oriented text format for diagrams, cables and fuzz traces.

::

    surface boundary            # or: surface closed 3
    gen a 1
    component
      pass over 1
      edge a
      pass under 1
      edge a
    corner 1 ccw
    labeling 0

``labeling`` carries one bit per component; a ``flat`` line marks a diagram
without over/under information.  ``#`` starts a comment.  :func:`dump`
writes the canonical layout, and ``dump(parse(text)) == text`` for every
canonical file.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .diagram import CCW, CW, OVER, UNDER, Component, LinkDiagram, Pass
from .surface import SurfacePresentation, WordError, format_word, parse_word

_SYMBOL = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_ID = re.compile(r"[A-Za-z0-9_:]+\Z")


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class _Tok:
    text: str
    line: int
    col: int


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = [_Tok(m.group(), lineno, m.start() + 1) for m in re.finditer(r"\S+", body)]
        if toks:
            yield lineno, toks


def _word(tok: _Tok):
    try:
        w = parse_word(tok.text)
    except WordError as exc:
        raise ParseError(str(exc), tok.line, tok.col) from None
    for s, _ in w:
        if not _SYMBOL.match(s):
            raise ParseError(f"bad generator symbol {s!r}", tok.line, tok.col)
    return w


def _expect(toks, n: int, lineno: int) -> None:
    if len(toks) != n:
        where = toks[n] if len(toks) > n else toks[-1]
        raise ParseError(f"{toks[0].text!r} takes {n - 1} argument(s)", lineno, where.col)


def _bit(tok: _Tok) -> int:
    if tok.text not in ("0", "1"):
        raise ParseError(f"expected 0 or 1, got {tok.text!r}", tok.line, tok.col)
    return int(tok.text)


def _id(tok: _Tok) -> str:
    if not _ID.match(tok.text):
        raise ParseError(f"bad crossing id {tok.text!r}", tok.line, tok.col)
    return tok.text


def _parse(text: str, extra=None) -> LinkDiagram:
    surface = None
    gens: list[tuple[str, int]] = []
    closed = None
    comps: list[tuple[list[Pass], list]] = []
    corners: list[tuple[str, str]] = []
    labeling = None
    flat = False
    last = 0
    for lineno, toks in _lines(text):
        last = lineno
        head = toks[0].text
        if head == "surface":
            if surface is not None:
                raise ParseError("surface given twice", lineno)
            if len(toks) >= 2 and toks[1].text == "boundary":
                _expect(toks, 2, lineno)
                surface = "boundary"
            elif len(toks) >= 2 and toks[1].text == "closed":
                _expect(toks, 3, lineno)
                if not toks[2].text.isdigit() or int(toks[2].text) < 1:
                    raise ParseError("closed surface needs k >= 1", lineno, toks[2].col)
                surface, closed = "closed", int(toks[2].text)
            else:
                raise ParseError("expected 'surface boundary' or 'surface closed <k>'", lineno,
                                 toks[-1].col)
        elif head == "gen":
            _expect(toks, 3, lineno)
            if surface != "boundary" or comps:
                raise ParseError("'gen' belongs right after 'surface boundary'", lineno)
            if not _SYMBOL.match(toks[1].text):
                raise ParseError(f"bad generator symbol {toks[1].text!r}", lineno, toks[1].col)
            gens.append((toks[1].text, _bit(toks[2])))
        elif head == "component":
            _expect(toks, 1, lineno)
            comps.append(([], []))
        elif head in ("pass", "edge"):
            if not comps:
                raise ParseError(f"{head!r} outside a component", lineno)
            passes, edges = comps[-1]
            if head == "pass":
                _expect(toks, 3, lineno)
                if toks[1].text not in (OVER, UNDER):
                    raise ParseError("role must be over or under", lineno, toks[1].col)
                if len(edges) != len(passes):
                    raise ParseError("two passes without an edge between them", lineno)
                passes.append(Pass(_id(toks[2]), toks[1].text))
            else:
                _expect(toks, 2, lineno)
                if len(edges) != (len(passes) - 1 if passes else 0):
                    raise ParseError("edge without a preceding pass", lineno)
                edges.append(_word(toks[1]))
        elif head == "corner":
            _expect(toks, 3, lineno)
            if toks[2].text not in (CCW, CW):
                raise ParseError("corner bit must be ccw or cw", lineno, toks[2].col)
            corners.append((_id(toks[1]), toks[2].text))
        elif head == "labeling":
            if labeling is not None:
                raise ParseError("labeling given twice", lineno)
            labeling = [_bit(t) for t in toks[1:]]
        elif head == "flat":
            _expect(toks, 1, lineno)
            flat = True
        elif extra is not None and head in extra:
            extra[head](toks, lineno)
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, toks[0].col)
    if surface is None:
        raise ParseError("missing 'surface' line", last or 1)
    try:
        pres = (SurfacePresentation.closed(closed) if surface == "closed"
                else SurfacePresentation.with_boundary(gens))
    except ValueError as exc:
        raise ParseError(str(exc), last or 1) from None
    if labeling is None:
        raise ParseError("missing 'labeling' line", last or 1)
    if len(labeling) != len(comps):
        raise ParseError(f"labeling has {len(labeling)} bits for {len(comps)} components", last)
    out = []
    for (passes, edges), bit in zip(comps, labeling):
        if len(edges) != max(len(passes), 1):
            raise ParseError("every pass must be followed by an edge", last)
        out.append(Component(tuple(passes), tuple(edges), bit))
    return LinkDiagram(pres, tuple(out), tuple(corners), flat)


def parse(text: str) -> LinkDiagram:
    """Parse a diagram file.  Structural problems are left to ``validate``."""
    return _parse(text)


def dump(d: LinkDiagram) -> str:
    lines = []
    if d.surface.is_closed:
        lines.append(f"surface closed {len(d.surface.generators)}")
    else:
        lines.append("surface boundary")
        lines += [f"gen {s} {b}" for s, b in d.surface.generators]
    for comp in d.components:
        lines.append("component")
        if not comp.passes:
            lines.append(f"  edge {format_word(comp.edges[0])}")
        for p, e in zip(comp.passes, comp.edges):
            lines.append(f"  pass {p.role} {p.crossing}")
            lines.append(f"  edge {format_word(e)}")
    lines += [f"corner {x} {bit}" for x, bit in d.corners]
    lines.append("labeling " + " ".join(str(c.labeling) for c in d.components))
    if d.flat:
        lines.append("flat")
    return "\n".join(lines) + "\n"


# --- cables ---------------------------------------------------------------------

def dump_cable(cable) -> str:
    lines = [dump(cable.diagram).rstrip("\n")]
    for x in sorted(cable.inp):
        lines.append(f"inp {x} {cable.inp[x]}")
        lines.append(f"out {x} {cable.out[x]}")
    for k, (orig, name) in enumerate(cable.names):
        lines.append(f"strand {k} {orig} {name}")
    return "\n".join(lines) + "\n"


def parse_cable(text: str):
    from .cabling import LEFT, RIGHT, CableDiagram
    inp: dict[str, str] = {}
    out: dict[str, str] = {}
    names: dict[int, tuple[int, str]] = {}

    def tile(toks, lineno):
        _expect(toks, 3, lineno)
        (inp if toks[0].text == "inp" else out)[toks[1].text] = toks[2].text

    def strand(toks, lineno):
        _expect(toks, 4, lineno)
        if not toks[1].text.isdigit() or not toks[2].text.isdigit():
            raise ParseError("strand indices must be integers", lineno, toks[1].col)
        if toks[3].text not in (LEFT, RIGHT):
            raise ParseError("strand name must be Left or Right", lineno, toks[3].col)
        names[int(toks[1].text)] = (int(toks[2].text), toks[3].text)

    d = _parse(text, {"inp": tile, "out": tile, "strand": strand})
    if sorted(names) != list(range(len(d.components))):
        raise ParseError("every cable component needs one 'strand' line", 1)
    return CableDiagram(d, inp, out, tuple(names[k] for k in range(len(names))))


# --- fuzz traces ----------------------------------------------------------------

def dump_trace(case) -> str:
    return json.dumps({"seed": case.seed, "mode": case.mode, "diagram": dump(case.start),
                       "moves": [m.to_json() for m in case.moves], "error": case.error},
                      indent=2, sort_keys=True) + "\n"


def parse_trace(text: str):
    from .moves import MoveInstance
    data = json.loads(text)
    return data, parse(data["diagram"]), [MoveInstance.from_json(m) for m in data["moves"]]
