"""Command-line entry point.

    skinet check spot.skillset --all
    skinet check spot.skillset --deadskill go_to --format json
    skinet export spot.skillset --net spot.net
    skinet graph spot.skillset --dot spot.dot
    skinet oracle spot.skillset

Exit codes: 0 all requested checks pass, 1 a check failed (or the oracle
found a mismatch), 2 parse/validation/usage error, 3 state limit exceeded.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from .builder import BuildError, BuildOptions, build_net
from .checks import check_dead, check_deadset, check_deadskill, check_live, check_safe
from .model import ValidationError, validate
from .oracle import check_equivalence, explore_direct
from .parser import ParseError, parse_skillset
from .report import build_report, dumps, render_text
from .statespace import DEFAULT_LIMIT, StateLimitExceeded, explore, to_dot
from .tina import BareNameCollision, export_net

CHECKS = ("dead", "live", "safe", "deadskill", "deadset")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


@dataclass
class RunConfig:
    input: Path
    command: str = "check"
    checks: list[str] = field(default_factory=list)
    deadskill: str = "all"  # skill name or "all"
    options: BuildOptions = BuildOptions()
    net_path: Optional[str] = None
    dot_path: Optional[str] = None
    report_path: Optional[str] = None
    fmt: str = "text"
    limit: int = DEFAULT_LIMIT
    bare_state_names: bool = False
    pr_grouped: bool = False
    timings: bool = True

    def __post_init__(self):
        actions = self.checks or self.net_path or self.dot_path or self.command == "oracle"
        if not actions:
            raise ValueError("nothing to do: request a check or an export")


def _write(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def run(config: RunConfig) -> int:
    err = sys.stderr
    try:
        skillset = parse_skillset(Path(config.input).read_text(encoding="utf-8"))
    except ParseError as e:
        print(f"{config.input}:{e}", file=err)
        return EXIT_INPUT
    except OSError as e:
        print(f"cannot read {config.input}: {e}", file=err)
        return EXIT_INPUT

    check = validate(skillset)
    for w in check.warnings:
        print(f"warning: {w}", file=err)
    if not check.ok:
        for e in check.errors:
            print(f"error: {e}", file=err)
        return EXIT_INPUT

    try:
        net = build_net(skillset, config.options)
        if config.net_path:
            _write(config.net_path, export_net(net, config.bare_state_names, config.pr_grouped))
    except (BuildError, BareNameCollision, ValidationError) as e:
        print(f"error: {e}", file=err)
        return EXIT_INPUT

    needs_graph = config.checks or config.dot_path or config.command == "oracle"
    if not needs_graph:
        return EXIT_OK
    try:
        graph = explore(net, config.limit, strict_safety=False)
        lts = explore_direct(skillset, config.options, config.limit) if config.command == "oracle" else None
    except StateLimitExceeded as e:
        print(f"error: {e}", file=err)
        return EXIT_LIMIT
    if config.dot_path:
        _write(config.dot_path, to_dot(graph))

    if config.command == "oracle":
        result = check_equivalence(lts, graph, skillset)
        if result:
            print(f"equivalent: {len(graph.states)} states, {len(graph.edges)} net edges, "
                  f"{len(lts.edges)} interpreter steps")
            return EXIT_OK
        print(f"mismatch: {result.mismatch}")
        return EXIT_FAIL

    results = []
    for name in CHECKS:
        if name not in config.checks:
            continue
        if name == "dead":
            results.append(check_dead(graph))
        elif name == "live":
            results.append(check_live(net, graph))
        elif name == "safe":
            results.append(check_safe(skillset, net, graph))
        elif name == "deadskill":
            targets = [s.name for s in skillset.skills] if config.deadskill == "all" else [config.deadskill]
            for s in targets:
                if s not in {k.name for k in skillset.skills}:
                    print(f"error: unknown skill {s!r}", file=err)
                    return EXIT_INPUT
                results.append(check_deadskill(graph, s))
        else:
            results.append(check_deadset(graph))

    doc = build_report(skillset, net, graph, results, config.timings)
    if results:
        if config.report_path:
            _write(config.report_path, dumps(doc))
        sys.stdout.write(dumps(doc) if config.fmt == "json" else render_text(doc))
    return EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("input", type=Path, help="skillset file")
    common.add_argument("--no-events", action="store_true", help="drop event transitions")
    common.add_argument("--no-exit-places", action="store_true",
                        help="terminate skills straight to their entry place, without resets")
    common.add_argument("--strict-moves", action="store_true",
                        help="also prune guarded resource moves that are not declared")
    common.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="maximum number of states")

    p = argparse.ArgumentParser(prog="skinet", description="Skillset to Petri net verification.")
    sub = p.add_subparsers(dest="command", required=True)

    chk = sub.add_parser("check", parents=[common], help="explore the net and run checks")
    for name in ("dead", "live", "safe", "deadset"):
        chk.add_argument(f"--{name}", action="store_true")
    chk.add_argument("--deadskill", nargs="?", const="all", metavar="NAME",
                     help="one skill, or every skill when NAME is omitted")
    chk.add_argument("--all", action="store_true", help="run all five checks")
    chk.add_argument("--format", choices=("text", "json"), default="text")
    chk.add_argument("--report", metavar="PATH", help="also write the JSON report here")
    chk.add_argument("--net", metavar="PATH", help="also export the net")
    chk.add_argument("--dot", metavar="PATH", help="also dump the state graph")
    chk.add_argument("--no-timings", action="store_true", help="omit elapsed times from reports")

    exp = sub.add_parser("export", parents=[common], help="write the Tina .net file")
    exp.add_argument("--net", metavar="PATH", default="-", help="output file (default: stdout)")
    exp.add_argument("--bare-state-names", action="store_true",
                     help="name resource places by state only")
    exp.add_argument("--pr-grouped", action="store_true",
                     help="emit one grouped priority line instead of one per pair")

    gr = sub.add_parser("graph", parents=[common], help="dump the reachability graph as DOT")
    gr.add_argument("--dot", metavar="PATH", default="-")

    sub.add_parser("oracle", parents=[common],
                   help="compare the net against the direct skillset interpreter")
    return p


def config_from_args(args) -> RunConfig:
    checks = []
    if args.command == "check":
        picked = {n: getattr(args, n) for n in ("dead", "live", "safe", "deadset")}
        picked["deadskill"] = args.deadskill is not None
        checks = [n for n in CHECKS if args.all or picked[n]]
    return RunConfig(
        input=args.input,
        command=args.command,
        checks=checks,
        deadskill=getattr(args, "deadskill", None) or "all",
        options=BuildOptions(not args.no_events, not args.no_exit_places, args.strict_moves),
        net_path=getattr(args, "net", None),
        dot_path=getattr(args, "dot", None),
        report_path=getattr(args, "report", None),
        fmt=getattr(args, "format", "text"),
        limit=args.limit,
        bare_state_names=getattr(args, "bare_state_names", False),
        pr_grouped=getattr(args, "pr_grouped", False),
        timings=not getattr(args, "no_timings", False),
    )


def main(argv=None) -> int:
    parser = _parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
    except ValueError as e:
        parser.error(str(e))
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
