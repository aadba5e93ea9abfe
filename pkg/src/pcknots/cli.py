"""Command-line front end.

Exit codes: 0 success (valid, equal, all checks pass), 1 domain failure
(invalid diagram, distinguished pair, failing fuzz case), 2 usage or parse
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .algebra import BAR_RINGS, format_value, value_to_json
from .cabling import explicit_cable
from .diagram import DiagramError, validate
from .invariants import report
from .moves import FuzzCase, fuzz, replay, checks_for, invariant_values
from .surface import SurfacePresentation, UnsupportedSurfaceError
from .textio import ParseError, dump_cable, dump_trace, parse, parse_trace


class _UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    d = parse(_read(path))
    problems = validate(d)
    if problems:
        raise DiagramError(f"{path}: invalid diagram: " + "; ".join(problems))
    return d


def _fmt(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, list):
        return " | ".join(f"deg {k}: {format_value(v)}" for k, v in enumerate(value, 1)) or "0"
    return format_value(value)


def _json(value):
    if value is None:
        return None
    if isinstance(value, list):
        return [value_to_json(v) for v in value]
    return value_to_json(value)


# --- commands ---------------------------------------------------------------------

def cmd_validate(args) -> int:
    d = parse(_read(args.path))
    problems = validate(d)
    for p in problems:
        print(p)
    if not problems:
        print("valid")
    return 1 if problems else 0


def cmd_invariants(args) -> int:
    d = _load(args.path)
    skip = [s for part in args.skip for s in part.split(",") if s]
    records = report(d, args.bar_ring, skip)
    if args.json:
        doc = [{"name": r.name, "status": r.status, "group": r.group,
                "raw": _json(r.raw), "canonical": _json(r.canonical),
                "raw_text": None if r.raw is None else _fmt(r.raw),
                "canonical_text": None if r.canonical is None else _fmt(r.canonical)}
               for r in records]
        print(json.dumps(doc, indent=2, ensure_ascii=False))
        return 0
    for r in records:
        if r.status != "ok":
            print(f"{r.name}: {r.status}")
            continue
        print(f"{r.name}")
        print(f"  raw:       {_fmt(r.raw)}")
        print(f"  canonical: {_fmt(r.canonical)}")
        print(f"  up to:     {r.group}")
    return 0


def _surface_spec(text: str | None):
    if not text:
        return None
    gens = []
    for item in text.split(","):
        sym, _, bit = item.partition(":")
        if bit not in ("0", "1"):
            raise _UsageError(f"bad --surface-spec item {item!r}; expected symbol:bit")
        gens.append((sym, int(bit)))
    try:
        return SurfacePresentation.with_boundary(gens)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _campaign(job):
    seed, n, moves, mode, crossings, surface = job
    return fuzz(seed, n, moves, mode=mode, max_crossings=crossings, surface=surface)


def cmd_fuzz(args) -> int:
    surface = _surface_spec(args.surface_spec)
    modes = ("knot", "flat", "link") if args.mode == "all" else (args.mode,)
    jobs = [(seed, args.diagrams, args.moves, mode, args.crossings, surface)
            for seed in range(args.first_seed, args.first_seed + args.seeds) for mode in modes]
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            reports = list(pool.map(_campaign, jobs))
    else:
        reports = [_campaign(j) for j in jobs]
    totals: dict[str, list[int]] = {}
    failures: list[FuzzCase] = []
    errors = 0
    for rep in reports:
        for name, (ok, total) in rep.counts().items():
            slot = totals.setdefault(name, [0, 0])
            slot[0] += ok
            slot[1] += total
        failures += rep.failures
        errors += sum(1 for c in rep.cases if c.error)
    n_cases = sum(len(r.cases) for r in reports)
    print(f"cases: {n_cases}, failing: {len(failures)}, errors: {errors}")
    for name, (ok, total) in sorted(totals.items()):
        print(f"  {name}: {ok}/{total} preserved")
    if failures:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for case in failures:
            path = out / f"trace-{case.mode}-{case.seed}.json"
            path.write_text(dump_trace(case))
        print(f"failing traces written to {out}/")
        return 1
    return 0


def cmd_cable(args) -> int:
    cable = explicit_cable(_load(args.path))
    text = dump_cable(cable)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_compare(args) -> int:
    a, b = _load(args.a), _load(args.b)
    if a.surface != b.surface:
        raise DiagramError("the two diagrams live on different surface presentations")
    if len(a.components) != len(b.components):
        print("distinguished: different numbers of components")
        return 1
    ra = {r.name: r for r in report(a, args.bar_ring)}
    rb = {r.name: r for r in report(b, args.bar_ring)}
    distinct = False
    for name in ra:
        x, y = ra[name], rb[name]
        if x.status != "ok" or y.status != "ok":
            print(f"{name}: {x.status if x.status != 'ok' else y.status}")
            continue
        same = x.canonical == y.canonical
        distinct |= not same
        verdict = "equal" if same else "distinct"
        print(f"{name}: {verdict}  ({_fmt(x.canonical)} vs {_fmt(y.canonical)})")
    print("distinguished" if distinct else "not distinguished")
    return 1 if distinct else 0


def cmd_replay(args) -> int:
    data, start, moves = parse_trace(_read(args.trace))
    mode = data.get("mode", "knot")
    try:
        steps = replay(start, moves)
    except Exception as exc:
        print(f"move {len(moves)} fails: {type(exc).__name__}: {exc}")
        return 1
    names = checks_for(mode)
    before = invariant_values(steps[0], names)
    after = invariant_values(steps[-1], names)
    bad = False
    for name in names:
        same = before[name][1] == after[name][1]
        bad |= not same
        print(f"{name}: {'preserved' if same else 'CHANGED'}  "
              f"{_fmt(before[name][1])} -> {_fmt(after[name][1])}")
    if args.show:
        from .textio import dump
        sys.stdout.write(dump(steps[-1]))
    return 1 if bad else 0


# --- entry point --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pcknots", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", help="check a diagram file")
    s.add_argument("path")
    s.set_defaults(fn=cmd_validate)

    s = sub.add_parser("invariants", help="report every applicable invariant")
    s.add_argument("path")
    s.add_argument("--json", action="store_true")
    s.add_argument("--bar-ring", choices=BAR_RINGS, default="z2i")
    s.add_argument("--skip", action="append", default=[], help="comma-separated invariant names")
    s.set_defaults(fn=cmd_invariants)

    s = sub.add_parser("fuzz", help="random Reidemeister sequences against the invariants")
    s.add_argument("--seeds", type=int, default=4)
    s.add_argument("--first-seed", type=int, default=0)
    s.add_argument("--diagrams", type=int, default=25, help="diagrams per seed")
    s.add_argument("--crossings", type=int, default=4, help="max crossings of start diagrams")
    s.add_argument("--moves", type=int, default=10, help="max moves per diagram")
    s.add_argument("--mode", choices=("knot", "flat", "link", "all"), default="all")
    s.add_argument("--surface-spec", help="e.g. a:1,b:0 (default: random per diagram)")
    s.add_argument("--out", default="fuzz-failures")
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(fn=cmd_fuzz)

    s = sub.add_parser("cable", help="emit the explicit 2-cabling")
    s.add_argument("path")
    s.add_argument("-o", "--output")
    s.set_defaults(fn=cmd_cable)

    s = sub.add_parser("compare", help="try to tell two diagrams apart")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--bar-ring", choices=BAR_RINGS, default="z2i")
    s.set_defaults(fn=cmd_compare)

    s = sub.add_parser("replay", help="re-run a fuzz trace")
    s.add_argument("trace")
    s.add_argument("--show", action="store_true", help="print the final diagram")
    s.set_defaults(fn=cmd_replay)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, _UsageError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DiagramError, UnsupportedSurfaceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
