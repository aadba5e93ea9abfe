from __future__ import annotations

from pathlib import Path

import pytest

from pcknots.diagram import OVER, UNDER, knot
from pcknots.surface import SurfacePresentation

FIXTURES = Path(__file__).parent / "fixtures"

MOBIUS_SURFACE = SurfacePresentation.with_boundary([("a", 1)])


def mobius_knot():
    """One crossing on the Möbius band, both arcs running once through the crosscap."""
    return knot(MOBIUS_SURFACE, [(OVER, "1"), (UNDER, "1")], [(("a", 1),), (("a", 1),)],
                [("1", "ccw")], 0)


@pytest.fixture
def mobius():
    return mobius_knot()


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
