"""Command-line front end.  Every command prints one JSON report on stdout and
a short human summary on stderr.

Exit codes: 0 on success, 1 on an evaluation error (or a failing ``check``),
2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Optional, Sequence

from .fixpoint import (INITIAL, TERMINAL, ChainError, bounded_universe, card_universe,
                       lambek_check, parse_functor, rank_universe, run_chain, trunc_universe)
from .noetherian import CounterTower, certify
from .ordinals import LAMBDA, OrdinalSyntaxError, parse_ordinal, parse_ordinal_ext, print_ordinal
from .rank import Bottom, NoSmallRank, Of, member, member_via_homs, bounded_member, rank_of
from .report import error_report, ok_report
from .skeleton import Ref, SkeletonEnv, SkeletonError, construct, print_env
from .suites import DEFAULT_CASES, SUITES, run_suite
from .syntax import ScheduleError, SkeletonSyntaxError, parse_file, parse_schedule

SUITE_NAMES = list(SUITES) + ["all"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)

    def exit(self, status=0, message=None):
        # --help prints and exits normally; anything else is a usage error
        if status:
            raise UsageError(message or "usage error")
        raise SystemExit(status)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rankfix", description="Rank, Noetherian certification and fixpoint "
                                            "chains for finitely presented skeletons.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    r = sub.add_parser("rank", help="rank of a skeleton")
    r.add_argument("file")
    r.add_argument("--def", dest="def_name")
    r.add_argument("--ordinal-out", action="store_true",
                   help="report only the rank as an ordinal string")

    c = sub.add_parser("construct", help="skeleton of a given rank")
    c.add_argument("ordinal")
    c.add_argument("-o", "--output")

    n = sub.add_parser("noetherian", help="certify or refute the Noetherian property")
    n.add_argument("file")
    n.add_argument("--def", dest="def_name")

    m = sub.add_parser("member", help="membership in a stage of the chain")
    m.add_argument("file")
    m.add_argument("--def", dest="def_name")
    m.add_argument("--stage", required=True)
    mode = m.add_mutually_exclusive_group()
    mode.add_argument("--bounded", action="store_true")
    mode.add_argument("--via-homs", action="store_true")

    f = sub.add_parser("fixpoint", help="run an endofunctor chain")
    f.add_argument("--universe", required=True, choices=["rank", "bounded", "card", "trunc"])
    f.add_argument("--functor")
    f.add_argument("--direction", choices=[INITIAL, TERMINAL], default=None)
    f.add_argument("--schedule", required=True)
    f.add_argument("--corpus")
    f.add_argument("--horizon", type=int, default=16,
                   help="successor steps per w-block when expanding a range")

    k = sub.add_parser("check", help="run a property suite")
    k.add_argument("--suite", required=True, choices=SUITE_NAMES)
    k.add_argument("--seed", type=int, default=0)
    k.add_argument("--cases", type=int, default=None)
    return p


class EvalError(Exception):
    def __init__(self, message: str, position: Optional[dict] = None):
        super().__init__(message)
        self.position = position


def _load(path: str) -> SkeletonEnv:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise EvalError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_file(text)


def _target(env: SkeletonEnv, def_name: Optional[str]):
    if def_name is None:
        return env.main_expr()
    if def_name not in env.defs:
        raise EvalError(f"no definition named {def_name!r}")
    return Ref(def_name)


def _rank_json(r) -> dict:
    match r:
        case Bottom():
            return {"kind": "bottom", "rank": "BOTTOM"}
        case Of(theta):
            return {"kind": "of", "rank": print_ordinal(theta)}
        case NoSmallRank(cycle):
            return {"kind": "no_small_rank", "rank": "NO_SMALL_RANK", "witness": cycle.to_json()}
    raise AssertionError(r)


def cmd_rank(a) -> tuple[dict, str]:
    env = _load(a.file)
    r = rank_of(env, _target(env, a.def_name))
    result = _rank_json(r)
    if a.ordinal_out:
        result = {"rank": result["rank"]}
    return result, f"rank: {result['rank']}"


def cmd_construct(a) -> tuple[dict, str]:
    theta = parse_ordinal(a.ordinal)
    env, e = construct(theta)
    text = print_env(SkeletonEnv({"C": e}, "C"))
    if a.output:
        Path(a.output).write_text(text)
    return {"ordinal": print_ordinal(theta), "skeleton": text}, text.rstrip()


def cmd_noetherian(a) -> tuple[dict, str]:
    env = _load(a.file)
    v = certify(env, _target(env, a.def_name))
    if isinstance(v, CounterTower):
        return ({"verdict": "counter_tower", "tower": v.tower.to_json()},
                f"not Noetherian; tower with period {len(v.tower.cycle)}")
    return {"verdict": "certified"}, "Noetherian"


def cmd_member(a) -> tuple[dict, str]:
    env = _load(a.file)
    e = _target(env, a.def_name)
    theta = parse_ordinal_ext(a.stage)
    if a.via_homs:
        try:
            ok, mode = member_via_homs(env, e, theta), "via_homs"
        except ValueError as exc:
            raise EvalError(str(exc)) from exc
    elif a.bounded:
        ok, mode = bounded_member(env, e, theta), "bounded"
    else:
        ok, mode = member(env, e, theta), "rank"
    stage = print_ordinal(theta)
    return ({"stage": stage, "mode": mode, "member": ok},
            f"{'in' if ok else 'not in'} stage {stage} ({mode})")


def _corpus(path: Optional[str]):
    if path is None:
        return []
    env = _load(path)
    return [(env, Ref(name)) for name in env.defs]


def cmd_fixpoint(a) -> tuple[dict, str]:
    schedule = parse_schedule(a.schedule, a.horizon)
    match a.universe:
        case "rank":
            u = rank_universe(_corpus(a.corpus))
        case "bounded":
            if a.corpus is None:
                raise EvalError("the bounded universe needs --corpus")
            u = bounded_universe(_corpus(a.corpus))
        case "card":
            if a.functor is None:
                raise EvalError("the card universe needs --functor")
            try:
                u = card_universe(parse_functor(a.functor))
            except ValueError as exc:
                raise EvalError(str(exc)) from exc
        case "trunc":
            u = trunc_universe()
    direction = a.direction or (TERMINAL if a.universe == "trunc" else INITIAL)
    report = run_chain(u, schedule, direction)
    result = report.to_json(u)
    if report.stabilized:
        result["lambek_check"] = lambek_check(u, report)
        summary = (f"stabilized at {print_ordinal(report.verdict.index)}: "
                   f"{report.verdict.value}")
    else:
        summary = f"no stabilization within {len(report.visited)} stages"
    return result, summary


def cmd_check(a) -> tuple[dict, str]:
    checks = run_suite(a.suite, a.seed, a.cases)
    passed = all(c.passed for c in checks)
    lines = [f"{'PASS' if c.passed else 'FAIL'} {c.name}  {c.detail.splitlines()[0] if c.detail else ''}"
             for c in checks]
    return ({"suite": a.suite, "seed": a.seed, "passed": passed,
             "checks": [c.to_json() for c in checks]}, "\n".join(lines))


COMMANDS = {"rank": cmd_rank, "construct": cmd_construct, "noetherian": cmd_noetherian,
            "member": cmd_member, "fixpoint": cmd_fixpoint, "check": cmd_check}


def _position(exc: Exception) -> Optional[dict]:
    match exc:
        case SkeletonSyntaxError(line=line, col=col):
            return {"line": line, "column": col}
        case OrdinalSyntaxError(pos=pos):
            return {"offset": pos}
    return None


def execute(args: Sequence[str]) -> tuple[int, dict, str]:
    """Run one command; returns (exit code, report, human summary)."""
    args = list(args)
    command = args[0] if args else ""
    try:
        ns = build_parser().parse_args(args)
    except UsageError as exc:
        return 2, error_report(command, {"argv": args}, str(exc)), f"usage error: {exc}"
    inputs: dict[str, Any] = {k: v for k, v in vars(ns).items() if k != "command"}
    if ns.command == "check" and ns.cases is None:
        inputs["cases"] = None if ns.suite == "all" else DEFAULT_CASES[ns.suite]
    try:
        result, summary = COMMANDS[ns.command](ns)
    except (EvalError, SkeletonError, SkeletonSyntaxError, OrdinalSyntaxError, ScheduleError,
            ChainError) as exc:
        position = exc.position if isinstance(exc, EvalError) else _position(exc)
        return 1, error_report(ns.command, inputs, str(exc), position), f"error: {exc}"
    code = 1 if ns.command == "check" and not result["passed"] else 0
    return code, ok_report(ns.command, inputs, result), summary


def run_cli(args: Sequence[str]) -> tuple[int, dict]:
    code, report, _ = execute(args)
    return code, report


def main(argv: Optional[Sequence[str]] = None) -> int:
    code, report, summary = execute(sys.argv[1:] if argv is None else argv)
    print(json.dumps(report, indent=2))
    if summary:
        print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
