from __future__ import annotations

import random

import pytest

from pcknots.cabling import LEFT, RIGHT, explicit_cable, oracle_sign
from pcknots.diagram import (OVER, UNDER, NotPseudoClassicalError, all_signs, knot, relabel,
                             reverse, switch)
from pcknots.generate import random_diagram
from pcknots.surface import SurfacePresentation
from pcknots.textio import dump_cable, parse_cable


def test_cable_shape(mobius):
    cable = explicit_cable(mobius)
    assert len(cable.diagram.components) == 2
    assert len(cable.diagram.crossings) == 4
    assert cable.names == ((0, LEFT), (0, RIGHT))
    assert oracle_sign(cable, "1") == all_signs(mobius)["1"]


def test_cable_of_orientation_reversing_knot_fails():
    s = SurfacePresentation.with_boundary([("a", 1)])
    d = knot(s, [(OVER, "1"), (UNDER, "1")], [(("a", 1),), ()], [("1", "ccw")], 0)
    with pytest.raises(NotPseudoClassicalError, match="orientation-reversing"):
        explicit_cable(d)


@pytest.mark.parametrize("components", [1, 2, 3])
def test_oracle_agrees_with_parity_signs(components):
    rng = random.Random(components)
    for _ in range(80):
        d = random_diagram(rng, rng.randint(1, 6), n_components=components)
        for e in (d, relabel(d, 0), reverse(d, 0), switch(d, d.crossings[0])):
            cable = explicit_cable(e)
            assert len(cable.diagram.crossings) == 4 * len(e.crossings)
            signs = all_signs(e)
            for x in e.crossings:
                assert oracle_sign(cable, x) == signs[x]


def test_cable_file_round_trip():
    rng = random.Random(9)
    for _ in range(20):
        d = random_diagram(rng, rng.randint(1, 4))
        cable = explicit_cable(d)
        text = dump_cable(cable)
        back = parse_cable(text)
        assert back == cable
        assert dump_cable(back) == text
        for x in d.crossings:
            assert oracle_sign(back, x) == all_signs(d)[x]
