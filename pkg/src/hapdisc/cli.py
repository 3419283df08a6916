"""Command-line front end.

Verbs map one-to-one onto the library: classify (closed forms, sizes
1-4), color / cycle (skip-graph block), check (pattern realizability),
realize (walk a pattern from a start term), longest (pruned search),
reduce (equal-sum-subsets transformation) and verify (discrepancy of a
stored coloring).  Output is a human-readable line by default and JSON
with --json.  Exit codes: 0 success, 1 when classify/color establish
that the set forces discrepancy two (so shell scripts can branch on it),
2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .classify import UnsupportedSizeError, classify
from .pattern import (
    Pattern,
    SignedPattern,
    format_pattern,
    infer_signs,
    parse_pattern,
    realize,
)
from .realizability import strict_realizability, weakly_realizable
from .reduction import ESSInstance, build_d1_instance, ess_solve, witness_cycle
from .search import longest_odd_cycle, longest_path
from .skipgraph import (
    DEFAULT_PERIOD_CAP,
    Coloring,
    PeriodCapExceeded,
    build_graph,
    find_odd_cycle,
    two_color,
    verify_discrepancy,
)

ENV_MAX_PERIOD = "HAPDISC_MAX_PERIOD"


class UsageError(ValueError):
    pass


def _parse_int_list(text: str, what: str) -> tuple[int, ...]:
    try:
        values = tuple(int(tok) for tok in text.split(",") if tok.strip())
    except ValueError:
        raise UsageError(f"cannot parse {what} {text!r}; expected comma-separated integers")
    if not values:
        raise UsageError(f"{what} must be nonempty")
    return values


def _period_cap(args) -> int:
    if getattr(args, "max_period", None):
        return args.max_period
    env = os.environ.get(ENV_MAX_PERIOD)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{ENV_MAX_PERIOD} must be an integer, got {env!r}")
    return DEFAULT_PERIOD_CAP


def _emit(args, payload: dict, human: str) -> None:
    print(json.dumps(payload) if args.json else human)


def _mirrored_line(coloring: Coloring) -> str:
    # position i in 1..period mirrors vertex period - i, so the mirrored
    # sequence is one block read backwards
    return " ".join("+1" if v > 0 else "-1" for v in coloring.values[::-1])


def _cmd_classify(args) -> int:
    result = classify(_parse_int_list(args.skips, "skip set"))
    if args.json:
        print(json.dumps(result.to_json_dict()))
    elif result.forces:
        assert result.predicted_cycle is not None
        labeling = ", ".join(f"{k}={v}" for k, v in (result.labeling or {}).items())
        print(
            f"forces discrepancy two: yes (rule {result.rule}; {labeling}; "
            f"cycle {format_pattern(result.predicted_cycle)} at {result.predicted_start})"
        )
    else:
        print("forces discrepancy two: no")
    return 1 if result.forces else 0


def _cmd_color(args) -> int:
    g = build_graph(_parse_int_list(args.skips, "skip set"), _period_cap(args))
    coloring = two_color(g)
    if coloring is not None:
        line = _mirrored_line(coloring) if args.erdos_indexing else coloring.line()
        _emit(args, {"period": g.period, "coloring": line}, line)
        return 0
    cert = find_odd_cycle(g)
    assert cert is not None
    sp, start = cert.signed_pattern, cert.start
    if args.erdos_indexing:
        sp = SignedPattern(tuple((-s, a) for s, a in sp.steps))
        start = g.period - start
    _emit(
        args,
        {"odd_cycle": realize(sp, start).to_json_dict()},
        f"odd cycle: {format_pattern(sp)} at {start}",
    )
    return 1


def _cmd_cycle(args) -> int:
    g = build_graph(_parse_int_list(args.skips, "skip set"), _period_cap(args))
    cert = find_odd_cycle(g)
    if cert is None:
        _emit(args, {"certificate": None}, "none")
        return 0
    sp, start = cert.signed_pattern, cert.start
    if args.erdos_indexing:
        sp = SignedPattern(tuple((-s, a) for s, a in sp.steps))
        start = g.period - start
    _emit(
        args,
        {"certificate": realize(sp, start).to_json_dict()},
        f"odd cycle: {format_pattern(sp)} at {start}",
    )
    return 0


def _cmd_check(args) -> int:
    verdict = strict_realizability(parse_pattern(args.pattern))
    payload = verdict.to_json_dict()
    if verdict.status == "forbidden":
        assert verdict.failure is not None
        human = (
            f"forbidden ({verdict.failure.reason} fails on steps "
            f"{verdict.failure.i}..{verdict.failure.j})"
        )
    else:
        human = f"{verdict.status} at {verdict.witness_start}"
        if verdict.signed is not None:
            human += f" via {format_pattern(verdict.signed)}"
    _emit(args, payload, human)
    return 0


def _cmd_realize(args) -> int:
    p = parse_pattern(args.pattern)
    if isinstance(p, Pattern):
        if args.start is None:
            raise UsageError("--start is required for unsigned patterns")
        sp = infer_signs(p, args.start)
        start = args.start
    else:
        sp = p
        if args.start is not None:
            start = args.start
        else:
            verdict = weakly_realizable(sp)
            if verdict.status == "forbidden":
                raise UsageError("pattern is not weakly realizable; give --start explicitly")
            assert verdict.witness_start is not None
            start = verdict.witness_start
    walk = realize(sp, start)
    human = f"{format_pattern(sp)} at {start}: terms {' '.join(map(str, walk.terms))}"
    if walk.parity_violations:
        human += f" (parity violations at {list(walk.parity_violations)})"
    _emit(args, walk.to_json_dict(), human)
    return 0


def _cmd_longest(args) -> int:
    skips = _parse_int_list(args.skips, "skip set")
    if args.kind == "path":
        result = longest_path(skips, args.max_len)
    else:
        result = longest_odd_cycle(skips, args.max_len)
    if result is None:
        _emit(args, {"result": None}, "none")
        return 0
    _emit(args, result.to_json_dict(), result.table_row(len(set(skips))))
    return 0


def _cmd_reduce(args) -> int:
    inst = ESSInstance.of(_parse_int_list(args.elements, "instance"))
    ri = build_d1_instance(inst)
    witness = ess_solve(inst)
    payload: dict = {
        "M": ri.M,
        "r": ri.r,
        "t": ri.t,
        "s": list(ri.s),
        "ess": {"answer": witness is not None},
    }
    human = f"M={ri.M} r={ri.r} t={ri.t} s={list(ri.s)}"
    if witness is not None:
        xv, yv = witness.values(inst)
        payload["ess"]["X"] = list(xv)
        payload["ess"]["Y"] = list(yv)
        cycle = witness_cycle(ri, witness)
        payload["cycle"] = format_pattern(cycle)
        human += f" ess: positive X={list(xv)} Y={list(yv)} cycle={format_pattern(cycle)}"
    else:
        human += " ess: negative"
    _emit(args, payload, human)
    return 0


def _read_coloring(path: str) -> Coloring:
    with open(path, "r", encoding="utf-8") as fh:
        tokens = fh.read().split()
    values = []
    for tok in tokens:
        if tok in ("+1", "1", "+"):
            values.append(1)
        elif tok in ("-1", "-"):
            values.append(-1)
        else:
            raise UsageError(f"bad coloring token {tok!r}; expected +1 or -1")
    if not values:
        raise UsageError(f"coloring file {path} is empty")
    return Coloring.from_values(values)


def _cmd_verify(args) -> int:
    coloring = _read_coloring(args.coloring)
    if args.erdos_indexing:
        coloring = Coloring.from_values(coloring.values[::-1])
    worst = verify_discrepancy(coloring, _parse_int_list(args.skips, "skip set"), args.horizon)
    _emit(
        args,
        {"max_discrepancy": worst, "horizon": args.horizon},
        f"max |d(s,k)| = {worst} up to horizon {args.horizon}",
    )
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hapdisc",
        description="decide and certify when a skip set forces discrepancy two",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add_json(p):
        p.add_argument("--json", action="store_true", help="emit machine-readable JSON")

    def add_cap(p):
        p.add_argument(
            "--max-period",
            type=int,
            default=None,
            help=f"largest allowed period 2*lcm(S); default {DEFAULT_PERIOD_CAP} "
            f"(env {ENV_MAX_PERIOD})",
        )
        p.add_argument(
            "--erdos-indexing",
            action="store_true",
            help="mirror output onto progression positions 1..period",
        )

    p = sub.add_parser("classify", help="closed-form decision for |S| <= 4")
    p.add_argument("-s", "--skips", required=True, help="comma-separated skip set")
    add_json(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("color", help="2-color one period block or print an odd cycle")
    p.add_argument("-s", "--skips", required=True)
    add_json(p)
    add_cap(p)
    p.set_defaults(func=_cmd_color)

    p = sub.add_parser("cycle", help="search the block graph for an odd cycle")
    p.add_argument("-s", "--skips", required=True)
    add_json(p)
    add_cap(p)
    p.set_defaults(func=_cmd_cycle)

    p = sub.add_parser("check", help="realizability verdict for a pattern")
    p.add_argument("-p", "--pattern", required=True, help="pattern in bracket notation")
    add_json(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("realize", help="walk a pattern from a start term")
    p.add_argument("-p", "--pattern", required=True)
    p.add_argument("--start", type=int, default=None)
    add_json(p)
    p.set_defaults(func=_cmd_realize)

    p = sub.add_parser("longest", help="longest realizable path or odd cycle")
    p.add_argument("-s", "--skips", required=True)
    p.add_argument("--kind", choices=("path", "cycle"), default="path")
    p.add_argument("--max-len", type=int, default=64)
    add_json(p)
    p.set_defaults(func=_cmd_longest)

    p = sub.add_parser("reduce", help="equal-sum-subsets to discrepancy-one instance")
    p.add_argument("-a", "--elements", required=True, help="comma-separated integers")
    add_json(p)
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("verify", help="max discrepancy of a stored coloring")
    p.add_argument("--coloring", required=True, help="file of +1/-1 tokens, one period")
    p.add_argument("-s", "--skips", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument(
        "--erdos-indexing",
        action="store_true",
        help="treat the file as progression positions 1..period",
    )
    add_json(p)
    p.set_defaults(func=_cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, PeriodCapExceeded, UnsupportedSizeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
