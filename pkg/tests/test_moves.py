from __future__ import annotations

import itertools
import random

import pytest

from pcknots import diagram, invariants as inv
from pcknots.algebra import GaussianInt
from pcknots.diagram import (CCW, CW, OVER, UNDER, LinkDiagram, all_signs, crossing_sign,
                             is_pseudo_classical, sign_f1, validate)
from pcknots.generate import plant_triangle, random_diagram
from pcknots.moves import (MoveError, MoveInstance, apply_move, bigons, curls, fuzz, r1_insert,
                           r1_remove, r2_insert, r2_remove, r3_apply, r3_table, random_move,
                           replay, run_case, triangles)


def _diagrams(n, seed, **kw):
    rng = random.Random(seed)
    return [random_diagram(rng, rng.randint(1, 5), **kw) for _ in range(n)]


def test_r1_round_trip():
    rng = random.Random(0)
    for d in _diagrams(120, 0):
        e = rng.randrange(len(d.components[0].edges))
        split = rng.randint(0, len(d.components[0].edges[e]))
        for corner, over_first in itertools.product((CCW, CW), (True, False)):
            out = r1_insert(d, 0, e, split, corner, over_first, "new")
            assert validate(out) == []
            assert "new" in curls(out)
            assert crossing_sign(out, "new").is_real_unit()
            assert r1_remove(out, "new") == d


@pytest.mark.parametrize("orientation,over,corner",
                         list(itertools.product(("parallel", "antiparallel"), ("a", "b"),
                                                (CCW, CW))))
def test_r2_round_trip(orientation, over, corner):
    rng = random.Random(f"{orientation}-{over}-{corner}")
    for d in _diagrams(60, 1, n_components=2):
        edges = [(c, e) for c, comp in enumerate(d.components) for e in range(len(comp.edges))]
        (ca, ea), (cb, eb) = rng.sample(edges, 2)
        band = tuple((rng.choice(d.surface.symbols), rng.choice((1, -1)))
                     for _ in range(rng.randint(0, 2)))
        out = r2_insert(d, ca, ea, rng.randint(0, len(d.components[ca].edges[ea])),
                        cb, eb, rng.randint(0, len(d.components[cb].edges[eb])), band,
                        orientation, over, corner, ("p", "q"))
        assert validate(out) == []
        assert all(is_pseudo_classical(out, c) for c in range(len(out.components)))
        s = all_signs(out)
        assert s["p"] == -s["q"]
        assert ("p", "q") in bigons(out)
        # a component left without crossings has no marked basepoint, so search the shifts
        role = OVER if over == "b" else UNDER
        assert any(r2_remove(out, "p", "q", band, role, k) == d
                   for k in itertools.product(range(6), repeat=2))


def test_r2_needs_two_edges(mobius):
    with pytest.raises(MoveError):
        r2_insert(mobius, 0, 0, 0, 0, 0, 0)


def test_flat_r2_conjugate_rule():
    rng = random.Random(2)
    for d in _diagrams(80, 2, flat=True):
        edges = [(0, e) for e in range(len(d.components[0].edges))]
        (ca, ea), (cb, eb) = rng.sample(edges, 2)
        out = r2_insert(d, ca, ea, 0, cb, eb, 0, (), rng.choice(("parallel", "antiparallel")),
                        "a", rng.choice((CCW, CW)), ("p", "q"))
        assert sign_f1(out, "p") == sign_f1(out, "q").conj()


def test_r3_table_has_sixteen_patterns():
    assert len(r3_table()) == 16


def test_r3_is_an_involution_and_keeps_signs():
    rng = random.Random(3)
    seen = 0
    for d in _diagrams(120, 3):
        d = plant_triangle(rng, d)
        for tri in triangles(d):
            xs = (tri.tm, tri.tb, tri.mb)
            out = r3_apply(d, xs)
            assert validate(out) == []
            assert all_signs(out) == all_signs(d)
            assert r3_apply(out, xs) == d
            seen += 1
    assert seen > 50


def test_random_moves_stay_valid():
    rng = random.Random(4)
    for mode in ("knot", "flat", "link"):
        for _ in range(40):
            comps = 2 if mode == "link" else 1
            d = random_diagram(rng, rng.randint(0, 4), n_components=comps, flat=mode == "flat")
            for _ in range(6):
                d = apply_move(d, random_move(rng, d))
                assert validate(d) == []
                assert all(is_pseudo_classical(d, c) for c in range(len(d.components)))


def test_move_json_round_trip():
    m = MoveInstance("R2+", {"comp_a": 0, "band": [["a", 1]]})
    assert MoveInstance.from_json(m.to_json()) == m


def test_unknown_move_kind(mobius):
    with pytest.raises(MoveError):
        apply_move(mobius, MoveInstance("R4", {}))


def test_fuzz_is_deterministic():
    a = fuzz(11, 8, 5)
    b = fuzz(11, 8, 5)
    assert [c.moves for c in a.cases] == [c.moves for c in b.cases]
    assert a.counts() == b.counts()


def test_replay_reproduces_the_case():
    case = run_case(12345, "knot", 8)
    path = replay(case.start, case.moves)
    assert len(path) == len(case.moves) + 1
    again = replay(case.start, [m.to_json() for m in case.moves])
    assert again == path


def _hard_failures(report):
    # delta, delta0 and deltaH are preserved by every move with the right table
    strict = ("delta", "delta0", "deltaH")
    return [c for c in report.failures
            if c.error or any(not x.passed for x in c.comparisons if x.invariant in strict)]


def test_wrong_sign_table_is_detected(monkeypatch):
    inv._flat_terms_cached.cache_clear()
    assert _hard_failures(fuzz(7, 40, 8)) == []
    monkeypatch.setitem(diagram._TABLE, (False, False), GaussianInt(1, 0))
    try:
        assert _hard_failures(fuzz(7, 40, 8))
    finally:
        inv._flat_terms_cached.cache_clear()


def test_random_diagrams_mix_real_and_imaginary_signs():
    rng = random.Random(5)
    real = imag = 0
    for _ in range(200):
        for z in all_signs(random_diagram(rng, 6)).values():
            real += z.is_real_unit()
            imag += z.is_imaginary_unit()
    assert real > 100 and imag > 100


def test_flat_switch_only_on_flat(mobius):
    with pytest.raises(MoveError):
        apply_move(mobius, MoveInstance("switch", {"crossing": "1"}))
    flat = LinkDiagram(mobius.surface, mobius.components, mobius.corners, True)
    out = apply_move(flat, MoveInstance("switch", {"crossing": "1"}))
    assert out.flat and validate(out) == []
