"""Command-line front end: ``spgames COMMAND ...``.

JSON goes to stdout and diagnostics to stderr.  Exit codes: 0 success,
1 negative answer (not a solution, no strategy found), 2 input error,
3 resource budget exceeded.
"""
from __future__ import annotations

import argparse
import io
import json
import sys
from contextlib import redirect_stderr, redirect_stdout

from .analysis import ResourceError, compute_pareto, verify
from .cost import format_cost
from .game import GameError, binarize, booleanize, load_game
from .strategy import StrategyError, load_strategy
from .synthesis import (
    NotASolution, bound_f, brute_force_search, eliminate_cycles, extract_witnesses,
)
from .zerosum import punishing_strategy

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_INPUT)


def _nat(s: str) -> int:
    v = int(s)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {s}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="spgames", description="Stackelberg-Pareto reachability games.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def game_cmd(name, help_, strategy=False, bound=False):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("game")
        if strategy:
            sp.add_argument("--strategy", required=True)
        if bound:
            sp.add_argument("--bound", type=_nat, required=True)
        return sp

    game_cmd("validate", "check a game file")
    game_cmd("binarize", "subdivide heavy edges").add_argument("-o", "--output", required=True)
    game_cmd("booleanize", "set every weight to 0").add_argument("-o", "--output", required=True)
    game_cmd("pareto", "Pareto front of a strategy", strategy=True, bound=True)
    game_cmd("verify", "check whether a strategy is a solution", strategy=True, bound=True)
    sp = game_cmd("solve", "search for a solution with bounded memory", bound=True)
    sp.add_argument("--memory", type=_nat, required=True)
    sp.add_argument("--jobs", type=_nat, default=1)
    sp.add_argument("--budget", type=_nat, default=1_000_000)
    game_cmd("improve", "eliminate cycles from a solution", strategy=True, bound=True)
    sp = game_cmd("punish", "punishing strategy after a deviation", strategy=True, bound=True)
    sp.add_argument("--history", required=True, help="space-separated vertex ids")
    sp = sub.add_parser("bounds", help="bound on finite Pareto-optimal cost components")
    sp.add_argument("--vertices", type=_nat, required=True)
    sp.add_argument("--maxweight", type=_nat, required=True)
    sp.add_argument("--bound", type=_nat, required=True)
    sp.add_argument("--dim", type=_nat, required=True)
    sp.add_argument("--csv", action="store_true")
    return p


def _emit(doc) -> None:
    print(json.dumps(doc, indent=2))


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")


def _dispatch(args) -> int:
    if args.command == "bounds":
        if args.vertices < 1 or args.dim < 1:
            raise GameError("--vertices and --dim must be >= 1")
        rep = bound_f(args.bound, args.dim, args.vertices, args.maxweight)
        print(rep.to_csv() if args.csv else rep.to_text())
        return EXIT_OK

    g = load_game(args.game)
    if args.command == "validate":
        a = g.arena
        print(f"ok: {len(a.vertices)} vertices, {len(a.edges)} edges, dimension {g.dimension}",
              file=sys.stderr)
        _emit({"valid": True, "vertices": len(a.vertices), "edges": len(a.edges),
               "dimension": g.dimension, "binary": a.is_binary()})
        return EXIT_OK
    if args.command == "binarize":
        g2, _ = binarize(g)
        _write(args.output, g2.to_json())
        print(f"wrote {args.output}: {len(g2.vertices)} vertices", file=sys.stderr)
        return EXIT_OK
    if args.command == "booleanize":
        _write(args.output, booleanize(g).to_json())
        print(f"wrote {args.output}", file=sys.stderr)
        return EXIT_OK
    if args.command == "solve":
        res = brute_force_search(g, args.bound, args.memory, jobs=args.jobs, budget=args.budget)
        print(f"checked {res.candidates_checked} candidate strategies", file=sys.stderr)
        if res.strategy is None:
            print("none")
            return EXIT_NO
        _emit(res.strategy.to_dict(g))
        return EXIT_OK

    sigma = load_strategy(args.strategy, g)
    B = args.bound
    if args.command == "pareto":
        print(str(compute_pareto(g, sigma, B)))
        return EXIT_OK
    if args.command == "verify":
        verdict = verify(g, sigma, B)
        _emit(verdict.to_dict())
        return EXIT_OK if verdict.is_solution else EXIT_NO
    if args.command == "improve":
        better, steps = eliminate_cycles(g, sigma, B)
        print(f"{steps} cycle elimination step(s)", file=sys.stderr)
        _emit(better.to_dict(g))
        return EXIT_OK
    if args.command == "punish":
        hv = args.history.split()
        front = verify(g, sigma, B).front
        _report_departure(g, sigma, B, front, hv)
        tau = punishing_strategy(g, sigma, hv, B, front)
        if tau is None:
            print("none")
            return EXIT_NO
        _emit(tau.to_dict(g))
        return EXIT_OK
    raise AssertionError(args.command)


def _report_departure(g, sigma, B, front, hv) -> None:
    try:
        tree = extract_witnesses(g, sigma, front, B)
    except ValueError:
        return
    for c in tree.costs():
        play = tuple(tree.witnesses[c].unroll(len(hv)))
        if play[: len(hv) - 1] == tuple(hv[:-1]) and play[len(hv) - 1] != hv[-1]:
            print(f"departs from witness of cost {format_cost(c)} after "
                  f"{' '.join(hv[:-1])}", file=sys.stderr)
            return
    print("history does not depart from a witness prefix", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _dispatch(args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    except (GameError, StrategyError, NotASolution, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


def run(argv) -> tuple[int, str]:
    """Run a command in-process; returns ``(exit code, stdout text)``."""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(list(argv))
    return code, out.getvalue()


if __name__ == "__main__":
    sys.exit(main())
