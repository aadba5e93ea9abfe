from __future__ import annotations

import random

import pytest

from pcknots.diagram import validate
from pcknots.generate import random_diagram
from pcknots.moves import run_case
from pcknots.textio import ParseError, dump, dump_trace, parse, parse_trace


def test_corpus_round_trip(fixtures_dir):
    files = sorted((fixtures_dir / "corpus").glob("*.pcd")) + sorted(fixtures_dir.glob("*.pcd"))
    assert len(files) > 50
    for path in files:
        text = path.read_text()
        d = parse(text)
        assert validate(d) == [], path.name
        assert dump(d) == text, path.name


def test_random_round_trip():
    rng = random.Random(0)
    for _ in range(200):
        d = random_diagram(rng, rng.randint(0, 6), n_components=rng.randint(1, 3),
                           flat=rng.random() < 0.3)
        assert parse(dump(d)) == d


def test_comments_and_blank_lines(fixtures_dir):
    text = "# Möbius knot\nsurface boundary\n\ngen a 1  # crosscap\ncomponent\n" \
           "  pass over 1\n  edge a\n  pass under 1\n  edge a\ncorner 1 ccw\nlabeling 0\n"
    assert dump(parse(text)) == (fixtures_dir / "mobius.pcd").read_text()


@pytest.mark.parametrize("text,line,column", [
    ("surface boundary\ngen a 2\n", 2, 7),
    ("surface boundary\ngen a 1\ncomponent\n  pass sideways 1\n", 4, 8),
    ("surface boundary\ngen a 1\ncomponent\n  edge a..a\nlabeling 0\n", 4, 8),
    ("surface boundary\ngen a 1\ncomponent\n  pass over 1\n  pass under 1\n", 5, 1),
    ("surface boundary\ngen a 1\nfrobnicate\n", 3, 1),
    ("surface closed 0\n", 1, 16),
    ("surface boundary\ngen a 1\ncorner 1 up\nlabeling\n", 3, 10),
])
def test_parse_error_locations(text, line, column):
    with pytest.raises(ParseError) as err:
        parse(text)
    assert (err.value.line, err.value.column) == (line, column)
    assert f"line {line}, column {column}" in str(err.value)


def test_missing_sections():
    with pytest.raises(ParseError, match="missing 'surface'"):
        parse("component\n")
    with pytest.raises(ParseError, match="missing 'labeling'"):
        parse("surface boundary\ngen a 1\ncomponent\n  edge a\n")
    with pytest.raises(ParseError, match="2 bits for 1"):
        parse("surface boundary\ngen a 1\ncomponent\n  edge a\nlabeling 0 1\n")


def test_trace_round_trip():
    case = run_case(99, "knot", 6)
    data, start, moves = parse_trace(dump_trace(case))
    assert start == case.start
    assert moves == case.moves
    assert data["seed"] == 99 and data["mode"] == "knot"
