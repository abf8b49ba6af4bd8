"""Command line: ``madfa {count,table,enumerate,zeta,verify}``.

Exit codes: 0 success, 1 verification failure, 2 configuration error,
3 parse/validation error, 4 oracle budget exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import automata, bijection, census, oracle, parking
from .parking import WeightFunction

EXIT_OK, EXIT_VERIFY, EXIT_CONFIG, EXIT_INVALID, EXIT_BUDGET = 0, 1, 2, 3, 4

COUNT_KINDS = ("pf", "simple-pf", "frobenius-pf", "d", "e", "adfa", "madfa")
TABLE_KINDS = {"a": "table-a", "b": "table-b", "c": "table-c",
               "d": "d", "e": "e", "f": "f", "s": "s", "adfa": "a", "madfa": "m"}


class ConfigError(Exception):
    pass


class InvalidInput(Exception):
    pass


def _phi(args) -> WeightFunction:
    if not args.phi:
        raise ConfigError("--phi is required")
    try:
        return WeightFunction.parse(args.phi, k=args.k, t=args.t)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise ConfigError(f"-{name} is required" if len(name) == 1 else f"--{name} is required")


def _emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_count(args) -> int:
    kind = args.kind
    _need(args, "n")
    if kind in ("pf", "simple-pf", "frobenius-pf"):
        phi = _phi(args)
        fn = {"pf": parking.count_pf, "simple-pf": parking.count_simple_pf,
              "frobenius-pf": parking.count_pf_via_frobenius}[kind]
        value = fn(phi, args.n)
    else:
        _need(args, "k")
        t = args.t or 0
        if kind == "d":
            value = census.count_transition_functions(args.k, t, args.n)
        elif kind == "e":
            value = census.count_extended_ni(args.k, t, args.n)
        else:
            if args.n < 1:
                raise ConfigError("-n must be at least 1")
            value = (census.count_adfa if kind == "adfa" else census.count_madfa)(args.k, args.n)
    _emit(args, f"{value}\n")
    return EXIT_OK


def cmd_table(args) -> int:
    kind = TABLE_KINDS[args.kind]
    k_max = args.k_max if args.k_max is not None else args.k
    if k_max is None:
        raise ConfigError("--k-max is required")
    n_max = args.n_max if args.n_max is not None else args.n
    if n_max is None:
        raise ConfigError("--n-max is required")
    lowest = 1 if kind in ("table-c", "a", "m") else 0
    n_min = args.n_min if args.n_min is not None else lowest
    try:
        table = census.emit_table(kind, range(1, k_max + 1), range(n_min, n_max + 1), args.t or 0)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    fmt = args.format or "csv"
    if fmt == "dot":
        raise ConfigError("tables support text, csv and json")
    _emit(args, {"csv": table.to_csv, "json": table.to_json, "text": table.to_text}[fmt]())
    return EXIT_OK


def _pf_text(pf: parking.ParkingFunction, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(pf.to_lists())
    return parking.format_pf(pf)


def cmd_enumerate(args) -> int:
    budget = args.budget if args.budget is not None else oracle.default_budget()
    _need(args, "n")
    lines = []
    if args.kind in ("pf", "simple-pf"):
        phi = _phi(args)
        if parking.count_pf(phi, args.n) > budget:
            raise oracle.BudgetExceeded(f"more than {budget} parking functions")
        gen = parking.enumerate_pf if args.kind == "pf" else parking.enumerate_simple_pf
        lines = [_pf_text(pf, args.format or "text") for pf in gen(phi, args.n)]
    else:
        _need(args, "k")
        for aut in oracle.brute_ni_automata(args.k, args.t or 0, args.n, budget):
            lines.append(json.dumps(automata.to_json_dict(aut), ensure_ascii=False))
    _emit(args, "".join(line + "\n" for line in lines))
    print(len(lines), file=sys.stderr)
    return EXIT_OK


def _read_input(args) -> str:
    if args.pf is not None:
        return args.pf
    if args.input in (None, "-"):
        return sys.stdin.read()
    try:
        return Path(args.input).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read {args.input}: {exc}") from None


def _read_constraints(path: str):
    try:
        doc = json.loads(Path(path).read_text())
        extras = [int(x) for x in doc["extras"]]
        cs = frozenset(automata.constraint_from_json(c) for c in doc["constraints"])
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from None
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed constraint file: {exc}") from None
    return extras, cs


def _parse_pf_document(text: str) -> parking.ParkingFunction:
    text = text.strip()
    if text.startswith("["):
        return parking.ParkingFunction.from_lists(json.loads(text))
    return parking.parse_pf(text)


def cmd_zeta(args) -> int:
    text = _read_input(args)
    extras, constraints = (_read_constraints(args.constraints) if args.constraints
                           else (None, None))
    try:
        if args.invert:
            aut = automata.from_json_dict(json.loads(text))
            if isinstance(aut, automata.InitialAutomaton):
                aut = aut.base
            if args.k is not None and args.k != aut.k:
                raise InvalidInput(f"automaton has k={aut.k}, -k says {args.k}")
            if constraints is not None:
                pf = bijection.zeta_extended_inverse(aut, aut.k, constraints)
            else:
                pf = bijection.zeta_inverse(aut)
            _emit(args, _pf_text(pf, "json" if args.format == "json" else "text") + "\n")
            return EXIT_OK
        _need(args, "k")
        pf = _parse_pf_document(text)
        if constraints is not None:
            aut = bijection.zeta_extended(pf, args.k, extras, constraints)
        else:
            t = args.t or 0
            aut = bijection.zeta(pf, args.k, range(pf.n + 1, pf.n + t + 1))
    except (ValueError, json.JSONDecodeError) as exc:
        raise InvalidInput(str(exc)) from None
    if args.format == "dot":
        _emit(args, automata.to_dot(aut))
    else:
        _emit(args, json.dumps(automata.to_json_dict(aut), indent=2, ensure_ascii=False) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.k is not None:
        ks = (args.k,)
    else:
        ks = tuple(range(1, (args.k_max or 2) + 1))
    n_max = args.n_max if args.n_max is not None else (args.n if args.n is not None else 3)
    t_max = args.t if args.t is not None else 1
    report = oracle.verify_all(oracle.Scope(ks, n_max, t_max), budget=args.budget)
    _emit(args, report.to_json() if args.format == "json" else report.to_text())
    return EXIT_OK if report.passed else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-k", "--k", type=int, dest="k", help="alphabet size")
    common.add_argument("-n", type=int, help="number of states / labels")
    common.add_argument("-t", type=int, help="number of extra absorbing states")
    common.add_argument("--k-max", type=int)
    common.add_argument("--n-max", type=int)
    common.add_argument("--phi", help='weight function, e.g. "m^2", "2m^k-1", "2(m+t)^k-t-1" or "a,k,t,c"')
    common.add_argument("--format", choices=("text", "json", "csv", "dot"))
    common.add_argument("--out", metavar="PATH")
    common.add_argument("--budget", type=int, help=f"oracle budget (env {oracle.BUDGET_ENV})")

    parser = argparse.ArgumentParser(prog="madfa", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("count", parents=[common], help="print one exact count")
    p.add_argument("kind", choices=COUNT_KINDS)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", parents=[common], help="emit a table of counts")
    p.add_argument("kind", choices=sorted(TABLE_KINDS))
    p.add_argument("--n-min", type=int)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("enumerate", parents=[common], help="list structures, one per line")
    p.add_argument("kind", choices=("pf", "simple-pf", "ni-adfa"))
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("zeta", parents=[common], help="apply the bijection or its inverse")
    p.add_argument("input", nargs="?", help="input file (default: stdin)")
    p.add_argument("--pf", help="parking function given inline")
    p.add_argument("--invert", action="store_true", help="map an automaton file back")
    p.add_argument("--constraints", metavar="PATH",
                   help="JSON {extras, constraints}: use the constrained bijection")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser("verify", parents=[common], help="run the brute-force oracle")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"madfa: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (InvalidInput, parking.ParkingStructureError, automata.AutomatonError,
            bijection.BijectionError) as exc:
        print(f"madfa: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except oracle.BudgetExceeded as exc:
        print(f"madfa: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET


if __name__ == "__main__":
    sys.exit(main())
