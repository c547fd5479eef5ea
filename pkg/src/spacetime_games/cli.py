"""Command-line interface: ``stgame <command> ...``.

Exit status is 0 on success, 1 on a domain error (non-generic payoffs,
imperfect information, an unsatisfiable closest history) and 2 on usage or
parse errors. Results go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import sys

from . import bell
from .convert import BadOrder, to_dot, to_extensive, to_strategic
from .counterfactuals import (
    Multihistory,
    NashDeviation,
    NoEquilibrium,
    TransparentResolve,
    contextuality_class,
    nashian_free_choice,
)
from .gameio import GameSyntaxError, format_rational, parse_game, serialize_game
from .generate import gen_random
from .model import GameError, validate_game
from .nash import ImperfectInformation, NonGeneric, nash_resolutions, spe
from .outcomes import profile_key
from .stats import GeneratorParams, stats_run
from .transparent import TransparentResolution, ppe, pte


class UsageError(Exception):
    pass


def _payoff(values) -> str:
    return "(" + ", ".join(format_rational(v) for v in values) + ")"


def _load(path: str, validate: bool = True):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    return parse_game(text, validate=validate)


def _write(text: str, path: str | None) -> None:
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def format_trace(result: TransparentResolution) -> list[str]:
    lines = []
    for r in result.trace:
        maximins = ", ".join(
            f"{pid}={format_rational(r.maximins[pid])} ({r.best_actions[pid]})" for pid in r.certainly_active
        )
        eliminated = "; ".join(o.key for o in r.eliminated) or "-"
        determined = ", ".join(f"{k}={v}" for k, v in r.determined.items()) or "-"
        lines.append(f"round {r.index}")
        lines.append(f"  certainly active: {', '.join(r.certainly_active) or '-'}")
        lines.append(f"  maximins: {maximins or '-'}")
        lines.append(f"  eliminated ({len(r.eliminated)}): {eliminated}")
        lines.append(f"  determined: {determined}")
        if r.flagged:
            lines.append(f"  flagged: {', '.join(r.flagged)}")
    return lines


def _print_transparent(result: TransparentResolution, trace: bool) -> int:
    if trace:
        print("\n".join(format_trace(result)))
    if result.status == "non-generic":
        player, a, b = result.ties[0]
        print(f"NonGeneric: {player} gets the same payoff at {a.key} and {b.key}", file=sys.stderr)
        return 1
    if result.status == "no-equilibrium":
        print("no transparent equilibrium")
        return 0
    print(f"outcome: {result.outcome.key}")
    print(f"payoff: {_payoff(result.payoff)}")
    return 0


def cmd_validate(args) -> int:
    g = _load(args.file, validate=False)
    report = validate_game(g)
    for w in report.warnings:
        print(f"warning: {w}")
    if report.ok:
        print("valid")
        return 0
    for v in report.violations:
        print(v)
    return 1


def cmd_outcomes(args) -> int:
    g = _load(args.file)
    for o in g.outcomes:
        print(f"{o.key}\t{_payoff(g.payoff(o))}")
    return 0


def cmd_convert(args) -> int:
    g = _load(args.file)
    order = args.order.split(",") if args.order else None
    if args.to == "dot":
        sys.stdout.write(to_dot(g))
    elif args.to == "tree-dot":
        sys.stdout.write(to_dot(to_extensive(g, order)))
    elif args.to == "extensive":
        eg = to_extensive(g, order)
        print(f"order: {', '.join(eg.order)}")
        print(f"leaves: {len(eg.leaves)}")
        for s in eg.info_sets:
            known = ",".join(f"{k}={v}" for k, v in sorted(s.known_ancestors.items())) or "-"
            print(f"info set {s.id}: player {s.player}, {len(s.nodes)} node(s), knows {known}")
    else:
        sg = to_strategic(g)
        for player, sets, strategies in zip(sg.players, sg.info_sets, sg.strategies):
            print(f"{player}: {len(strategies)} strategies over {', '.join(sets) or '-'}")
        for profile in sg.profiles():
            print(f"{profile_key(sg.assignment(profile))}\t{sg.outcomes[profile].key}\t{_payoff(sg.payoff(profile))}")
    return 0


def cmd_solve(args) -> int:
    g = _load(args.file)
    if args.method == "nash":
        found = nash_resolutions(g)
        if not found:
            print("no pure Nash equilibrium")
        for r in found:
            print(f"profile: {r.key}")
            print(f"  outcome: {r.outcome.key}")
            print(f"  payoff: {_payoff(r.payoff)}")
        return 0
    if args.method == "spe":
        r = spe(to_extensive(g))
        print(f"profile: {r.key}")
        print(f"outcome: {r.outcome.key}")
        print(f"payoff: {_payoff(r.payoff)}")
        return 0
    result = ppe(to_extensive(g)) if args.method == "ppe" else pte(g)
    return _print_transparent(result, args.trace)


def cmd_analyze(args) -> int:
    g = _load(args.file)
    if args.contextuality:
        for r in nash_resolutions(g):
            c = contextuality_class(r, g)
            print(f"nash {r.key}: {c.kind} {c.assigned}/{c.total}")
        solved = pte(g)
        if solved.found:
            c = contextuality_class(solved, g)
            print(f"pte {solved.outcome.key}: {c.kind} {c.assigned}/{c.total}")
        else:
            print(f"pte: {solved.status}")
        return 0

    point = args.free_choice
    if point not in g.point_map:
        raise UsageError(f"unknown point {point!r}")
    if args.semantics == "nash":
        resolutions = nash_resolutions(g)
        if not resolutions:
            print("no pure Nash equilibrium to deviate from", file=sys.stderr)
            return 1
        m = Multihistory(g, NashDeviation(resolutions[0].profile))
    else:
        m = Multihistory(g, TransparentResolve())
    result = nashian_free_choice(m, point)
    if result.free:
        print(f"{point}: freely chosen in the Nash sense")
    else:
        other, history, action = result.witness
        print(f"{point}: not freely chosen in the Nash sense")
        print(f"  witness: {other} changes in the closest history to {history.key} with {point}={action}")
    return 0


def cmd_bell(args) -> int:
    if args.scan:
        result = bell.local_deterministic_scan()
        print(f"max CHSH over deterministic strategies: {result.maximum}")
        print(f"maximizing models: {len(result.maximizers)}")
        return 0
    try:
        table = bell.CorrelationTable(*(bell.parse_correlation(t) for t in args.chsh))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    value = bell.chsh(table)
    print(f"CHSH: {value}")
    print("local" if bell.is_local(table) else "not local (CHSH > 2)")
    return 0


def cmd_gen(args) -> int:
    g = gen_random(args.nodes, args.max_actions, args.players, args.edge_density, args.seed)
    _write(serialize_game(g), args.output)
    return 0


def cmd_stats(args) -> int:
    params = GeneratorParams(args.nodes, args.max_actions, args.players, args.edge_density)
    _write(stats_run(args.count, params, args.seed, args.workers), args.output)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stgame", description="Spacetime game equilibrium engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a game file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("outcomes", help="list the outcome set with payoffs")
    p.add_argument("file")
    p.set_defaults(func=cmd_outcomes)

    p = sub.add_parser("convert", help="extensive or strategic form, or DOT graphs")
    p.add_argument("file")
    p.add_argument("--to", choices=("extensive", "strategic", "dot", "tree-dot"), required=True)
    p.add_argument("--order", help="comma-separated branching order of points")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("solve", help="compute an equilibrium")
    p.add_argument("file")
    p.add_argument("--method", choices=("nash", "spe", "ppe", "pte"), required=True)
    p.add_argument("--trace", action="store_true", help="print elimination rounds (ppe/pte)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("analyze", help="contextuality and free-choice analysis")
    p.add_argument("file")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--contextuality", action="store_true")
    mode.add_argument("--free-choice", metavar="POINT")
    p.add_argument("--semantics", choices=("nash", "transparent"), default="nash")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("bell", help="CHSH evaluation and the deterministic-strategy scan")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--chsh", nargs=4, metavar=("E11", "E12", "E21", "E22"))
    mode.add_argument("--scan", action="store_true")
    p.set_defaults(func=cmd_bell)

    def generator_options(p):
        p.add_argument("--nodes", type=int, default=4)
        p.add_argument("--max-actions", type=int, default=2)
        p.add_argument("--players", type=int, default=2)
        p.add_argument("--edge-density", type=float, default=0.3)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("-o", "--output")

    p = sub.add_parser("gen", help="generate a random generic game")
    generator_options(p)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("stats", help="existence/social-utility CSV over random games")
    generator_options(p)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    argv = list(sys.argv[1:] if argv is None else argv)
    if "--chsh" in argv:
        # Values such as -1/2 or -rt2/2 would otherwise be read as options.
        i = argv.index("--chsh") + 1
        argv[i : i + 4] = [" " + t if t.startswith("-") else t for t in argv[i : i + 4]]
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (GameSyntaxError, GameError, UsageError, BadOrder) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NonGeneric as exc:
        print(f"NonGeneric: {exc}", file=sys.stderr)
        return 1
    except (ImperfectInformation, NoEquilibrium) as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
