from __future__ import annotations

import random

import pytest

from conftest import mobius_knot
from pcknots.algebra import I, ONE
from pcknots.diagram import (CCW, OVER, UNDER, Component, DiagramError, LinkDiagram,
                             NotPseudoClassicalError, Pass, all_signs, crossing_sign,
                             extract_subdiagram, flat_pair_sign, is_pseudo_classical, knot,
                             loops_at, mutual_crossings, relabel, reverse, rotate_basepoint,
                             sign_f1, sign_f2, switch, unknot, validate)
from pcknots.generate import random_diagram
from pcknots.surface import SurfacePresentation, free_homotopy_class, parse_word, w1


def test_mobius_signs(mobius):
    assert crossing_sign(mobius, "1") == -I
    assert crossing_sign(relabel(mobius), "1") == I
    assert crossing_sign(reverse(mobius), "1") == I
    assert crossing_sign(switch(mobius, "1"), "1") == -I


def test_planar_one_crossing_curl_is_real():
    s = SurfacePresentation.with_boundary([("a", 1)])
    d = knot(s, [(OVER, "1"), (UNDER, "1")], [(), ()], [("1", CCW)], 0)
    assert crossing_sign(d, "1") == -ONE


def test_validate_reports_problems():
    s = SurfacePresentation.with_boundary([("a", 1)])
    dup = LinkDiagram(s, (Component((Pass("1", OVER), Pass("1", OVER)), ((), ()), 0),),
                      (("1", CCW),))
    problems = validate(dup)
    assert any("appears 2 times" in p for p in problems)
    assert any("missing under" in p for p in problems)
    unknown = unknot(s, parse_word("z"))
    assert any("unknown generator" in p for p in validate(unknown))
    assert validate(mobius_knot()) == []


def test_non_pseudo_classical_rejected():
    s = SurfacePresentation.with_boundary([("a", 1)])
    d = knot(s, [(OVER, "1"), (UNDER, "1")], [(("a", 1),), ()], [("1", CCW)], 0)
    assert not is_pseudo_classical(d)
    with pytest.raises(NotPseudoClassicalError):
        crossing_sign(d, "1")


def test_flat_diagram_has_no_sign(mobius):
    flat = LinkDiagram(mobius.surface, mobius.components, mobius.corners, True)
    with pytest.raises(DiagramError):
        crossing_sign(flat, "1")
    assert sign_f1(flat, "1") == -I


def test_flat_pair_sign_rule():
    assert flat_pair_sign(ONE, False) == -ONE
    assert flat_pair_sign(ONE, True) == ONE
    assert flat_pair_sign(I, False) == I
    assert flat_pair_sign(-I, True) == -I


def _samples(n, components=1, seed=0):
    rng = random.Random(seed)
    return [random_diagram(rng, rng.randint(1, 6), n_components=components) for _ in range(n)]


def test_relabel_reverse_switch_on_knots():
    for d in _samples(150):
        s = all_signs(d)
        assert all_signs(relabel(d)) == {x: -z for x, z in s.items()}
        assert all_signs(reverse(d)) == {x: -z for x, z in s.items()}
        for x in d.crossings:
            assert crossing_sign(switch(d, x), x) == -s[x].conj()


def test_link_sign_table():
    for d in _samples(150, components=2, seed=1):
        s = all_signs(d)
        for x in d.crossings:
            (co, _), (cu, _) = d.locate[(x, OVER)], d.locate[(x, UNDER)]
            if co == cu:
                continue
            z = s[x]
            assert crossing_sign(relabel(d, co), x) == (-z).swap()
            assert crossing_sign(relabel(d, cu), x) == z.swap()
            assert crossing_sign(relabel(d, [co, cu]), x) == -z
            assert crossing_sign(reverse(d, co), x) == z.swap()
            assert crossing_sign(reverse(d, cu), x) == (-z).swap()
            assert crossing_sign(reverse(d, [co, cu]), x) == -z
            assert crossing_sign(switch(d, x), x) == -z.conj()


def test_basepoint_rotation_keeps_signs():
    for d in _samples(80, seed=2):
        n = d.n_passes(0)
        for k in range(n):
            assert all_signs(rotate_basepoint(d, 0, k)) == all_signs(d)


def test_character_coherence():
    for d in _samples(200, seed=3):
        for x, z in all_signs(d).items():
            l1, l2 = loops_at(d, x)
            a, b = w1(l1.word(d), d.surface), w1(l2.word(d), d.surface)
            assert a == b
            assert z.is_real_unit() == (a == 0)
            assert z.is_imaginary_unit() == (a == 1)


def test_loops_multiply_to_the_component():
    for d in _samples(100, seed=4):
        whole = free_homotopy_class(d.components[0].closed_word, d.surface)
        for x in d.crossings:
            l1, l2 = loops_at(d, x)
            assert free_homotopy_class(l1.word(d) + l2.word(d), d.surface) == whole
            assert len(l1.positions(d)) + len(l2.positions(d)) == d.n_passes(0) - 2


def test_mobius_loops_and_mutual_crossings(mobius):
    l1, l2 = loops_at(mobius, "1")
    assert l1.word(mobius) == (("a", 1),) and l2.word(mobius) == (("a", 1),)
    assert mutual_crossings(mobius, l1, l2) == []


def test_sign_f2_swap_order():
    for d in _samples(100, components=2, seed=5):
        for x, first_over in mutual_crossings(d, 0, 1):
            a = sign_f2(d, x, 0, 1)
            b = sign_f2(d, x, 1, 0)
            assert b == -a.conj()


def test_extract_subdiagram():
    for d in _samples(120, seed=6):
        for x in d.crossings:
            for loop in loops_at(d, x):
                sub = extract_subdiagram(d, loop)
                assert sub.flat and validate(sub) == []
                assert free_homotopy_class(sub.components[0].closed_word, d.surface) == \
                    free_homotopy_class(loop.word(d), d.surface)
                positions = loop.positions(d)
                on = {d.pass_at(0, j) for j in positions}
                kept = {y for y in d.crossings if Pass(y, OVER) in on and Pass(y, UNDER) in on}
                assert set(sub.crossings) == kept
                if is_pseudo_classical(sub):
                    for y in kept:
                        assert sign_f1(sub, y) == sign_f1(d, y)


def test_extract_simple_loop_gives_zero_crossing_diagram(mobius):
    l1, _ = loops_at(mobius, "1")
    sub = extract_subdiagram(mobius, l1)
    assert sub.crossings == () and sub.components[0].edges == ((("a", 1),),)
