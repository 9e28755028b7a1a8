"""Command line entry point.

Exit codes: 0 feasible (or success), 1 infeasible, 2 error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Optional, Sequence

from .buchi import Decision, buchi_energy
from .energy import find_max_e
from .io import DocumentError, emit_wba, parse_wba, parse_wtba
from .oracle import DEFAULT_LIMIT, OracleLimitError, brute_force
from .scc import degeneralize_full
from .timed import bound_clocks, check_timed, check_timed_valid, corner_point_abstraction
from .wba import EnergyConfig, ValidationError, accumulate

FEASIBLE, INFEASIBLE, ERROR = 0, 1, 2


class CliError(Exception):
    pass


def _read(path: str) -> bytes:
    if path == "-":
        return sys.stdin.buffer.read()
    with open(path, "rb") as f:
        return f.read()


def _write(path: str, data: bytes):
    if path == "-":
        sys.stdout.buffer.write(data)
        sys.stdout.flush()
        return
    with open(path, "wb") as f:
        f.write(data)


def _config(args) -> EnergyConfig:
    try:
        return EnergyConfig(args.credit, args.bound)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _ids(xs) -> str:
    return " ".join(str(x) for x in xs) or "-"


def _report(d: Decision, cfg: EnergyConfig, witness: bool, out) -> int:
    print("feasible" if d.feasible else "infeasible", file=out)
    if d.caveat:
        print(f"caveat: {d.caveat}", file=out)
    if witness and d.feasible:
        a = d.automaton
        lasso = d.witness
        trace = accumulate([a.transitions[i].weight for i in lasso.unrolled(2)], cfg)
        print(f"prefix: {_ids(lasso.prefix.transitions)}", file=out)
        print(f"cycle: {_ids(lasso.cycle.transitions)}", file=out)
        print(f"energy: {_ids(trace)}", file=out)
    return FEASIBLE if d.feasible else INFEASIBLE


def cmd_check(args, out) -> int:
    a = parse_wba(_read(args.wba))
    cfg = _config(args)
    return _report(buchi_energy(a, cfg), cfg, args.witness, out)


def cmd_check_timed(args, out) -> int:
    t = parse_wtba(_read(args.wtba))
    cfg = _config(args)
    return _report(check_timed(t, cfg, allow_zeno=args.allow_zeno), cfg, args.witness, out)


def cmd_cpa(args, out) -> int:
    t = parse_wtba(_read(args.wtba))
    check_timed_valid(t, one_clock=True)
    if not args.no_bound_clocks:
        t = bound_clocks(t)
    try:
        a = corner_point_abstraction(t)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    _write(args.output, emit_wba(a))
    if args.output != "-":
        print(f"{a.num_states} states, {len(a.transitions)} transitions", file=out)
    return 0


def cmd_degeneralize(args, out) -> int:
    a = parse_wba(_read(args.wba))
    try:
        g = degeneralize_full(a)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    _write(args.output, emit_wba(g))
    if args.output != "-":
        print(f"{g.num_states} states, {len(g.transitions)} transitions", file=out)
    return 0


def cmd_maxenergy(args, out) -> int:
    a = parse_wba(_read(args.wba))
    cfg = _config(args)
    source = a.initial if args.source is None else args.source
    if not 0 <= source < a.num_states:
        raise CliError(f"source out of range: {source}")
    m = find_max_e(a, source, cfg)
    print("state\tenergy\tvia", file=out)
    for s in range(a.num_states):
        e = m[s]
        p = m.predecessors[s]
        print(f"{a.state_label(s)}\t{'-inf' if e == float('-inf') else e}\t{'-' if p is None else p}", file=out)
    return 0


def cmd_oracle(args, out) -> int:
    a = parse_wba(_read(args.wba))
    ok = brute_force(a, _config(args), limit=args.limit)
    print("feasible" if ok else "infeasible", file=out)
    return FEASIBLE if ok else INFEASIBLE


def _energy_args(p: argparse.ArgumentParser):
    p.add_argument("--credit", "-c", type=int, required=True, help="initial credit c")
    p.add_argument("--bound", "-b", type=int, required=True, help="energy bound b")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="energy-buchi",
        description="Energy-bounded Büchi acceptance for weighted (timed) Büchi automata.",
    )
    parser.add_argument("-v", "--verbose", action="count", default=0, help="more logging (repeatable)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide a WBA document")
    p.add_argument("wba")
    _energy_args(p)
    p.add_argument("--witness", action="store_true", help="print a lasso and its energy trace")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("check-timed", help="decide a WTBA document via the corner-point abstraction")
    p.add_argument("wtba")
    _energy_args(p)
    p.add_argument("--witness", action="store_true")
    p.add_argument("--allow-zeno", action="store_true", help="accept runs that let no time pass")
    p.set_defaults(func=cmd_check_timed)

    p = sub.add_parser("cpa", help="write the corner-point abstraction of a WTBA")
    p.add_argument("wtba")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--no-bound-clocks", action="store_true", help="skip the clock bounding step")
    p.set_defaults(func=cmd_cpa)

    p = sub.add_parser("degeneralize", help="write the one-color equivalent of a WBA")
    p.add_argument("wba")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_degeneralize)

    p = sub.add_parser("maxenergy", help="print maximal reachable energies")
    p.add_argument("wba")
    _energy_args(p)
    p.add_argument("--source", type=int, default=None, help="start state (default: initial)")
    p.set_defaults(func=cmd_maxenergy)

    p = sub.add_parser("oracle", help="brute-force answer on small instances")
    p.add_argument("wba")
    _energy_args(p)
    p.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="product size guard")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[Sequence[str]] = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    env = os.environ.get("ENERGY_BUCHI_VERBOSE", "")
    level = args.verbose or (int(env) if env.isdigit() else 0)
    logging.basicConfig(
        level=logging.WARNING if level <= 0 else logging.INFO if level == 1 else logging.DEBUG,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args, out)
    except (DocumentError, ValidationError, OracleLimitError, CliError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
