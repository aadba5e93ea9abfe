"""Random pseudo-classical diagrams for the property and fuzz suites."""

from __future__ import annotations

import random

from .diagram import CCW, CW, OVER, UNDER, Component, LinkDiagram, Pass, is_pseudo_classical
from .surface import SurfacePresentation, Word

MAX_TRIES = 10_000


def random_surface(rng: random.Random, max_generators: int = 3) -> SurfacePresentation:
    k = rng.randint(1, max_generators)
    bits = [rng.randint(0, 1) for _ in range(k)]
    if not any(bits):
        bits[rng.randrange(k)] = 1
    names = "abc"[:k] if k <= 3 else [f"g{j}" for j in range(k)]
    return SurfacePresentation.with_boundary(zip(names, bits))


def random_word(rng: random.Random, surface: SurfacePresentation, max_len: int = 2,
                p_empty: float = 0.4) -> Word:
    if rng.random() < p_empty:
        return ()
    return tuple((rng.choice(surface.symbols), rng.choice((1, -1)))
                 for _ in range(rng.randint(1, max_len)))


def random_diagram(seed, n_crossings: int, surface: SurfacePresentation | None = None,
                   n_components: int = 1, *, max_word: int = 2, p_empty: float = 0.4,
                   flat: bool = False) -> LinkDiagram:
    """Uniform chord pairing, corner bits and roles; short random arc words.

    Samples with an orientation-reversing component are rejected and redrawn.
    """
    rng = seed if isinstance(seed, random.Random) else random.Random(seed)
    if surface is None:
        surface = random_surface(rng)
    for _ in range(MAX_TRIES):
        ids = [str(k + 1) for k in range(n_crossings)]
        slots = [Pass(x, r) for x in ids for r in (OVER, UNDER)]
        rng.shuffle(slots)
        cuts = sorted(rng.randint(0, len(slots)) for _ in range(n_components - 1))
        bounds = [0] + cuts + [len(slots)]
        comps = []
        for lo, hi in zip(bounds, bounds[1:]):
            passes = tuple(slots[lo:hi])
            edges = tuple(random_word(rng, surface, max_word, p_empty)
                          for _ in range(max(len(passes), 1)))
            comps.append(Component(passes, edges, rng.randint(0, 1)))
        corners = tuple((x, rng.choice((CCW, CW))) for x in ids)
        d = LinkDiagram(surface, tuple(comps), corners, flat)
        if all(is_pseudo_classical(d, c) for c in range(n_components)):
            return d
    raise RuntimeError(f"no pseudo-classical sample after {MAX_TRIES} tries")


def plant_triangle(rng: random.Random, d: LinkDiagram, max_band: int = 2) -> LinkDiagram:
    """Add three strand segments forming an R3 triangle on three distinct edges.

    The pattern (strand orders and corner bits) is drawn from the realizable
    R3 configurations; the middle and bottom segments reach the triangle along
    random band words, so every component keeps its orientation character.
    Returns ``d`` unchanged when it has fewer than three edges.
    """
    from .moves import _splice, fresh_id, r3_table
    slots = [(c, e) for c, comp in enumerate(d.components) for e in range(len(comp.edges))]
    if len(slots) < 3:
        return d
    orders, bits = rng.choice(sorted(r3_table()))
    tm = fresh_id(d)
    tb = str(int(tm) + 1) if tm.isdigit() else tm + "b"
    mb = str(int(tm) + 2) if tm.isdigit() else tm + "c"
    sides = [
        [Pass(tm, OVER), Pass(tb, OVER)] if orders[0] else [Pass(tb, OVER), Pass(tm, OVER)],
        [Pass(tm, UNDER), Pass(mb, OVER)] if orders[1] else [Pass(mb, OVER), Pass(tm, UNDER)],
        [Pass(tb, UNDER), Pass(mb, UNDER)] if orders[2] else [Pass(mb, UNDER), Pass(tb, UNDER)],
    ]
    jobs = []
    for k, (c, e) in enumerate(rng.sample(slots, 3)):
        word = d.components[c].edges[e]
        cut = rng.randint(0, len(word))
        band = () if k == 0 else random_word(rng, d.surface, max_band, 0.3)
        inv = tuple((s, -x) for s, x in reversed(band))
        p, q = sides[k]
        jobs.append((c, e, [word[:cut] + band, p, (), q, inv + word[cut:]]))
    out = d
    for c, e, items in sorted(jobs, key=lambda j: (j[0], j[1]), reverse=True):
        comps = list(out.components)
        comps[c] = _splice(out, c, e, items)
        out = out.with_components(comps)
    return out.with_components(out.components,
                               d.corners + ((tm, bits[0]), (tb, bits[1]), (mb, bits[2])))
