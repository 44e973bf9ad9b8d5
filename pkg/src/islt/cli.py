"""Command-line front end.

Exit codes are uniform across subcommands: 0 for provable, valid, or
found; 1 for unprovable, invalid, or no countermodel within the bound;
2 for usage errors, malformed input, and budget aborts. Output for a
fixed invocation is byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from typing import Optional

from . import calculus, hilbert, semantics
from .cut import CutError, eliminate
from .formula import ParseError, parse_formula
from .measure import theta
from .search import BudgetExceeded, Proved, Unprovable, prove
from .sequent import Sequent, parse_sequent

_BUDGET_ENV = "ISLT_BUDGET"


def _env_budget() -> Optional[int]:
    raw = os.environ.get(_BUDGET_ENV)
    if raw is None or raw == "":
        return None
    try:
        value = int(raw)
    except ValueError:
        raise SystemExit(f"error: {_BUDGET_ENV} must be an integer, got {raw!r}")
    if value <= 0:
        raise SystemExit(f"error: {_BUDGET_ENV} must be positive")
    return value


def _parse_goal(text: str, as_sequent: bool) -> Sequent:
    if as_sequent:
        return parse_sequent(text)
    from .sequent import Multiset

    return Sequent(Multiset(), parse_formula(text))


def _cmd_prove(args: argparse.Namespace) -> int:
    goal = _parse_goal(args.goal, args.sequent)
    budget = args.budget if args.budget is not None else _env_budget()
    seed = args.seed
    if args.naive and seed is None:
        seed = random.SystemRandom().randrange(2**31)
    if args.naive:
        print(f"seed: {seed}", file=sys.stderr)
    result = prove(goal, naive=args.naive, seed=seed, budget=budget)
    if isinstance(result, Proved):
        if args.emit == "json":
            print(calculus.dumps(result.proof))
        elif args.emit == "text":
            print(calculus.render_text(result.proof), end="")
        else:
            print(calculus.render_dot(result.proof), end="")
        return 0
    if isinstance(result, Unprovable):
        print("unprovable")
        return 1
    assert isinstance(result, BudgetExceeded)
    print(
        f"error: search budget exhausted after exploring {result.explored} sequents "
        "with no verdict",
        file=sys.stderr,
    )
    return 2


def _cmd_check(args: argparse.Namespace) -> int:
    with open(args.certificate, "r", encoding="utf-8") as fh:
        d = calculus.loads(fh.read())
    bad = calculus.check(d)
    if bad is None:
        print("ok")
        return 0
    print(f"invalid: {bad}")
    return 1


def _cmd_cutelim(args: argparse.Namespace) -> int:
    with open(args.certificate, "r", encoding="utf-8") as fh:
        d = calculus.loads(fh.read())
    try:
        out = eliminate(d)
    except CutError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(calculus.dumps(out))
        fh.write("\n")
    print(f"cut-free certificate written to {args.output}")
    return 0


def _cmd_countermodel(args: argparse.Namespace) -> int:
    goal = _parse_goal(args.goal, args.sequent)
    found = semantics.find_countermodel(goal, max_worlds=args.max_worlds)
    if found is None:
        print(f"no countermodel within {args.max_worlds} worlds")
        return 1
    model, world = found
    payload = semantics.model_to_json(model)
    payload["refuting_world"] = world
    print(json.dumps(payload, indent=2, sort_keys=True))
    return 0


def _cmd_theta(args: argparse.Namespace) -> int:
    s = parse_sequent(args.sequent_text)
    print(json.dumps(theta(s), separators=(",", ":")))
    return 0


def _cmd_hilbert_check(args: argparse.Namespace) -> int:
    with open(args.proof, "r", encoding="utf-8") as fh:
        d = hilbert.loads(fh.read())
    bad = hilbert.check_hilbert(d)
    if bad is None:
        print("ok")
        return 0
    print(f"invalid: {bad}")
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="islt",
        description="Decision procedure and proof workbench for intuitionistic Strong Löb logic.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("prove", help="decide a formula or sequent, emitting a certificate")
    p.add_argument("goal", help="formula, or sequent with --sequent")
    p.add_argument("--sequent", action="store_true", help="parse the goal as 'ant => suc'")
    p.add_argument("--emit", choices=("text", "json", "dot"), default="json")
    p.add_argument("--naive", action="store_true", help="no memoization, shuffled rule order")
    p.add_argument("--seed", type=int, default=None, help="shuffle seed for --naive")
    p.add_argument("--budget", type=int, default=None, help="node budget (default: unlimited)")
    p.set_defaults(func=_cmd_prove)

    p = sub.add_parser("check", help="validate a proof certificate")
    p.add_argument("certificate", help="certificate JSON file")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("cutelim", help="eliminate Cut nodes from a certificate")
    p.add_argument("certificate", help="certificate JSON file, Cut nodes allowed")
    p.add_argument("-o", "--output", required=True, help="output file for the cut-free certificate")
    p.set_defaults(func=_cmd_cutelim)

    p = sub.add_parser("countermodel", help="search for a refuting Kripke model")
    p.add_argument("goal", help="formula, or sequent with --sequent")
    p.add_argument("--sequent", action="store_true", help="parse the goal as 'ant => suc'")
    p.add_argument("--max-worlds", type=int, default=semantics.ENUMERATION_BOUND)
    p.set_defaults(func=_cmd_countermodel)

    p = sub.add_parser("theta", help="print the ordering measure of a sequent")
    p.add_argument("sequent_text", metavar="sequent", help="'ant => suc'")
    p.set_defaults(func=_cmd_theta)

    p = sub.add_parser("hilbert-check", help="validate a Hilbert-style derivation")
    p.add_argument("proof", help="derivation JSON file")
    p.set_defaults(func=_cmd_hilbert_check)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (json.JSONDecodeError, KeyError, ValueError) as e:
        print(f"error: malformed input: {e}", file=sys.stderr)
        return 2
    except SystemExit as e:
        if isinstance(e.code, str):
            print(e.code, file=sys.stderr)
            return 2
        raise


if __name__ == "__main__":
    sys.exit(main())
