"""A1 to A13, exact arithmetic, one PASS/FAIL line each."""

from __future__ import annotations

import itertools
import random
import time
from collections import Counter

from conftest import FIXTURES, mobius_knot
from pcknots import invariants as inv
from pcknots.algebra import I, format_value
from pcknots.cabling import explicit_cable, oracle_sign
from pcknots.diagram import (CCW, CW, OVER, UNDER, Component, LinkDiagram, all_signs,
                             crossing_sign, loops_at, relabel, reverse, sign_f1, switch)
from pcknots.generate import random_diagram, random_word
from pcknots.moves import fuzz, r2_insert, replay
from pcknots.surface import SurfacePresentation, free_homotopy_class, parse_word, w1
from pcknots.textio import dump, parse


def _report(capsys, tag: str, ok: bool, detail: str) -> None:
    with capsys.disabled():
        print(f"\n{tag} {'PASS' if ok else 'FAIL'}: {detail}")
    assert ok, f"{tag}: {detail}"


def test_a1_oracle_equivalence(capsys):
    rng = random.Random(1)
    t0 = time.perf_counter()
    checked = bad = 0
    for _ in range(1000):
        d = random_diagram(rng, rng.randint(1, 8), n_components=rng.randint(1, 3))
        cable = explicit_cable(d)
        signs = all_signs(d)
        for x in d.crossings:
            checked += 1
            bad += oracle_sign(cable, x) != signs[x]
    elapsed = time.perf_counter() - t0
    _report(capsys, "A1", bad == 0 and elapsed < 60,
            f"1000 diagrams, {checked} crossings, {bad} mismatches, {elapsed:.1f}s")


def test_a2_knot_transformations(capsys):
    rng = random.Random(2)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(500):
        d = random_diagram(rng, rng.randint(1, 8))
        s = all_signs(d)
        bad += all_signs(relabel(d)) != {x: -z for x, z in s.items()}
        bad += all_signs(reverse(d)) != {x: -z for x, z in s.items()}
        for x in d.crossings:
            bad += crossing_sign(switch(d, x), x) != -s[x].conj()
    elapsed = time.perf_counter() - t0
    _report(capsys, "A2", bad == 0 and elapsed < 30,
            f"500 diagrams, {bad} violations, {elapsed:.1f}s")


def test_a3_link_transformations(capsys):
    rng = random.Random(3)
    checked = bad = 0
    for _ in range(500):
        d = random_diagram(rng, rng.randint(2, 8), n_components=2)
        s = all_signs(d)
        for x in d.crossings:
            (co, _), (cu, _) = d.locate[(x, OVER)], d.locate[(x, UNDER)]
            if co == cu:
                continue
            z = s[x]
            rows = [
                (relabel(d, co), (-z).swap()),
                (relabel(d, cu), z.swap()),
                (relabel(d, [co, cu]), -z),
                (reverse(d, co), z.swap()),
                (reverse(d, cu), (-z).swap()),
                (reverse(d, [co, cu]), -z),
                (switch(d, x), -z.conj()),
            ]
            for e, want in rows:
                checked += 1
                bad += crossing_sign(e, x) != want
    _report(capsys, "A3", bad == 0 and checked > 0,
            f"500 links, {checked} row checks, {bad} violations")


def test_a4_bigon_laws(capsys):
    rng = random.Random(4)
    checked = flat_checked = bad = 0
    for orientation, over, corner in itertools.product(("parallel", "antiparallel"), ("a", "b"),
                                                       (CCW, CW)):
        for _ in range(100):
            comps = rng.randint(1, 2)
            d = random_diagram(rng, rng.randint(1, 5), n_components=comps)
            edges = [(c, e) for c, comp in enumerate(d.components) for e in range(len(comp.edges))]
            (ca, ea), (cb, eb) = rng.sample(edges, 2)
            band = tuple((rng.choice(d.surface.symbols), rng.choice((1, -1)))
                         for _ in range(rng.randint(0, 2)))
            out = r2_insert(d, ca, ea, rng.randint(0, len(d.components[ca].edges[ea])),
                            cb, eb, rng.randint(0, len(d.components[cb].edges[eb])), band,
                            orientation, over, corner, ("p", "q"))
            checked += 1
            bad += crossing_sign(out, "p") != -crossing_sign(out, "q")
            if ca == cb:
                # the flat sign is only defined on self-crossings
                flat = LinkDiagram(out.surface, out.components, out.corners, True)
                flat_checked += 1
                bad += sign_f1(flat, "p") != sign_f1(flat, "q").conj()
    _report(capsys, "A4", bad == 0,
            f"8 variants x 100 draws = {checked} bigons ({flat_checked} flat), {bad} violations")


def _fuzz_line(report) -> str:
    counts = report.counts()
    parts = [f"{name} {ok}/{total}" for name, (ok, total) in counts.items()]
    errors = sum(1 for c in report.cases if c.error)
    return f"{len(report.cases)} cases, failing {len(report.failures)}, errors {errors}; " + \
        ", ".join(parts)


def _broken_invariants(report) -> Counter:
    out: Counter = Counter()
    for case in report.failures:
        for comp in case.comparisons:
            if not comp.passed:
                out[comp.invariant] += 1
    return out


def test_a5_knot_fuzz(capsys):
    t0 = time.perf_counter()
    report = fuzz(5, 300, 10, mode="knot")
    elapsed = time.perf_counter() - t0
    broken = _broken_invariants(report)
    detail = _fuzz_line(report) + f"; {elapsed:.1f}s"
    if broken:
        detail += "; changed: " + ", ".join(f"{k} x{v}" for k, v in sorted(broken.items()))
    _report(capsys, "A5", report.passed and elapsed < 300, detail)


def test_a6_flat_fuzz(capsys):
    report = fuzz(6, 300, 10, mode="flat")
    _report(capsys, "A6", report.passed, _fuzz_line(report))


def test_a7_link_fuzz(capsys):
    report = fuzz(7, 200, 10, mode="link")
    _report(capsys, "A7", report.passed, _fuzz_line(report))


def test_a8_character_coherence(capsys):
    rng = random.Random(8)
    checked = bad = 0
    for _ in range(500):
        d = random_diagram(rng, rng.randint(1, 8))
        for x, z in all_signs(d).items():
            l1, l2 = loops_at(d, x)
            a, b = w1(l1.word(d), d.surface), w1(l2.word(d), d.surface)
            checked += 1
            bad += a != b
            bad += z.is_real_unit() != (a == 0 and b == 0)
            bad += z.is_imaginary_unit() != (a == 1 and b == 1)
    _report(capsys, "A8", bad == 0, f"{checked} crossings, {bad} violations")


def test_a9_consistency_identities(capsys):
    rng = random.Random(9)
    bad_f = bad_h = 0
    for _ in range(500):
        d = random_diagram(rng, rng.randint(0, 8))
        bad_f += inv.affine_index(d) != inv.f_map(d, inv.delta_terms(d))
        bad_h += inv.deltaH(d) != inv.project_to_homology(d, inv.delta(d))
    _report(capsys, "A9", bad_f == 0 and bad_h == 0,
            f"500 diagrams, affine != f(delta): {bad_f}, deltaH != proj(delta): {bad_h}")


def test_a10_worked_example(capsys):
    d = mobius_knot()
    a = free_homotopy_class(parse_word("a"), d.surface)
    # hand traversal: one crossing, both loops are the core a with w1 = 1
    l1, l2 = loops_at(d, "1")
    hand = (l1.word(d), l2.word(d)) == ((("a", 1),), (("a", 1),))
    cable = explicit_cable(d)
    got = {
        "oracle sign": oracle_sign(cable, "1") == -I == crossing_sign(d, "1"),
        "hand loops": hand,
        "raw delta": format_value(inv.delta(d)) == "-i·[a]⊗[a]",
        "canonical delta": format_value(inv.canonical("delta", inv.delta(d))) == "+i·[a]⊗[a]",
        "affine canonical":
            format_value(inv.canonical("affine_index", inv.affine_index(d))) == "+i",
        "bracket zero": not inv.bracket_delta(d),
        "flat_delta": format_value(inv.flat_delta(d)) == "i·{[a], [a]}",
    }
    degrees = inv.iterated_flat_delta(d)
    got["iterated degrees"] = (len(degrees) == 2 and all(degrees)
                               and format_value(degrees[1]) == "i·{[a], [a]}"
                               and str(a) == "[a]")
    wrong = [k for k, ok in got.items() if not ok]
    _report(capsys, "A10", not wrong,
            "all values match" if not wrong else "mismatch: " + ", ".join(wrong))


def test_a11_iterated_bounds(capsys):
    cases = fuzz(11, 60, 10, mode="flat").cases + fuzz(12, 60, 10, mode="knot").cases
    checked = bad = 0
    for case in cases:
        for d in replay(case.start, case.moves):
            degrees = inv.iterated_flat_delta(d)
            checked += 1
            top = max((k for k, v in enumerate(degrees, 1) if v), default=0)
            bad += top > len(d.crossings) + 1
    _report(capsys, "A11", bad == 0, f"{checked} fuzz diagrams, {bad} over the bound")


def test_a12_round_trip(capsys):
    files = sorted(FIXTURES.glob("*.pcd")) + sorted((FIXTURES / "corpus").glob("*.pcd"))
    bad = [p.name for p in files if dump(parse(p.read_text())) != p.read_text()]
    _report(capsys, "A12", len(files) >= 50 and not bad,
            f"{len(files)} files, {len(bad)} not reproduced")


def _classical(rng: random.Random) -> LinkDiagram:
    """Random diagram whose arc words all have w1 = 0 on a surface that has a crosscap."""
    host = SurfacePresentation.with_boundary([("a", 0), ("b", 0), ("c", 1)])
    orientable = SurfacePresentation.with_boundary([("a", 0), ("b", 0), ("z", 1)])
    n = rng.randint(1, 6)
    d = random_diagram(rng, n, orientable, n_components=rng.randint(1, 2))
    comps = []
    for comp in d.components:
        edges = []
        for _ in comp.edges:
            w = random_word(rng, host, 2)
            edges.append(w if w1(w, host) == 0 else w + (("c", 1),))
        comps.append(Component(comp.passes, tuple(edges), comp.labeling))
    return LinkDiagram(host, tuple(comps), d.corners)


def test_a13_classical_reduction(capsys):
    rng = random.Random(13)
    bad_real = bad_mirror = 0
    names = ("delta", "delta0", "deltaH", "bracket_delta", "affine_index")
    for _ in range(300):
        d = _classical(rng)
        assert all(w1(e, d.surface) == 0 for c in d.components for e in c.edges)
        for x, z in all_signs(d).items():
            co, cu = d.locate[(x, OVER)][0], d.locate[(x, UNDER)][0]
            # different labelings on the two strands turn the pair into S(z)
            same = d.components[co].labeling == d.components[cu].labeling
            bad_real += z.is_real_unit() != same
        bad_mirror += all_signs(d, mirror=True) != all_signs(relabel(d))
        if len(d.components) == 1:
            for name in names:
                fn = getattr(inv, name)
                mirrored = inv.canonical(name, fn(d, mirror=True))
                bad_mirror += mirrored != inv.canonical(name, fn(relabel(d)))
                bad_mirror += mirrored != inv.canonical(name, fn(d))
        else:
            z = inv.linking(d, 0, 1, mirror=True)
            bad_mirror += z != inv.linking(relabel(d), 0, 1)
    _report(capsys, "A13", bad_real == 0 and bad_mirror == 0,
            f"300 classical diagrams, sign not real: {bad_real}, mirror != relabel: {bad_mirror}")
