"""Command-line interface.

Commands
--------
* ``construct`` — build a named module and write it as a module file.
* ``check`` — run a property decider on a module file.
* ``tau`` — apply the translate (or its inverse) to a module file.
* ``component`` — compute a component window in JSON, DOT, or ASCII form.
* ``verify`` — run the acceptance suite and print a pass/fail table.

Exit codes: 0 success (including property verdicts at exact or sampled
level), 1 a property fails or a verification claim fails, 2 invalid
parameters, 3 certificate budget exhausted under an explicitly requested
strategy.
"""

from __future__ import annotations

import argparse
import json
import sys

from .artrans import component_window
from .construct import injective, m_module, projective, simple, w_module
from .exactla import (GF, QQ, FieldSpec, GroebnerBudgetExceeded,
                      PencilBudgetExceeded)
from .jordan import (CertificateBudgetExceeded, STRATEGIES, check_cjt,
                     check_constant_j_rank, check_eip, check_ekp)
from .rep import UnsupportedFieldOperation, validate
from .serialize import ModuleFileError, dump_rep, dumps_rep, load_rep

__all__ = ["main"]

_BUDGET_ERRORS = (CertificateBudgetExceeded, GroebnerBudgetExceeded,
                  PencilBudgetExceeded)


class _CliError(Exception):
    """Invalid parameters; message names the violated constraint."""


def _parse_field(text: str) -> FieldSpec:
    if text == "Q":
        return QQ
    if text.startswith("F") and text[1:].isdigit():
        try:
            return GF(int(text[1:]))
        except ValueError as exc:
            raise _CliError(str(exc)) from exc
    raise _CliError(f"field must be 'Q' or 'F<p>' for a prime p, got {text!r}")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise _CliError(message)


def _echo_dims(dims) -> None:
    print(" ".join(str(d) for d in dims))


def _emit_rep(m, out_path: str | None) -> None:
    """Write the module file; echo dims when writing to a file."""
    if out_path:
        dump_rep(m, out_path)
        _echo_dims(m.dims)
    else:
        sys.stdout.write(dumps_rep(m))


def _cmd_construct(args) -> int:
    field = _parse_field(args.field)
    kind = args.kind
    if kind in ("m", "w"):
        _require(args.m is not None, f"construct {kind} needs --m")
        builder = m_module if kind == "m" else w_module
        rep = builder(args.m, args.n, args.r, field=field)
    else:
        _require(args.i is not None, f"construct {kind} needs --i (vertex)")
        builder = {"simple": simple, "proj": projective, "inj": injective}[kind]
        rep = builder(args.i, args.n, args.r, field=field)
    validate(rep)
    _emit_rep(rep, args.out)
    return 0


def _cmd_check(args) -> int:
    rep = load_rep(args.file)
    prop = args.property
    if prop == "crj":
        _require(args.j is not None, "check crj needs --j (the power)")
        report = check_constant_j_rank(rep, args.j, args.strategy)
    elif prop == "eip":
        report = check_eip(rep, args.strategy)
    elif prop == "ekp":
        report = check_ekp(rep, args.strategy)
    else:
        report = check_cjt(rep, args.strategy)
    print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    return 0 if report.verdict in ("holds", "holds-over-sampled-points") else 1


def _cmd_tau(args) -> int:
    from .artrans import tau, tau_inverse

    rep = load_rep(args.file)
    out = tau_inverse(rep) if args.inverse else tau(rep)
    _emit_rep(out, args.out)
    if not args.out:
        _echo_dims(out.dims)
    return 0


def _cmd_component(args) -> int:
    _require(args.m > args.n, "the source module needs m > n")
    _require(args.radius >= 0, "--radius must be >= 0")
    _require(args.quasi_length >= 1, "--quasi-length must be >= 1")
    report = component_window(args.n, args.r, args.m, args.radius,
                              args.quasi_length, args.strategy)
    if args.format == "json":
        print(json.dumps(report.to_dict(), indent=2, sort_keys=True))
    elif args.format == "dot":
        from .diagrams import component_dot

        sys.stdout.write(component_dot(report))
    else:
        from .diagrams import component_ascii

        sys.stdout.write(component_ascii(report))
    return 0


def _cmd_verify(args) -> int:
    from .verify import format_table, run_suite

    results = run_suite(suite=args.suite, max_m=args.max_m, max_n=args.grid,
                        progress=sys.stderr)
    sys.stdout.write(format_table(results))
    return 0 if all(res.ok for res in results) else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beilinson",
        description="Exact tools for graded modules with several "
                    "commuting nilpotent arrow actions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", help="build a named module file")
    c.add_argument("kind", choices=("m", "w", "simple", "proj", "inj"))
    c.add_argument("--n", type=int, required=True, help="number of vertices")
    c.add_argument("--r", type=int, required=True, help="arrows per step")
    c.add_argument("--m", type=int, help="family parameter for kinds m/w")
    c.add_argument("--i", type=int, help="vertex for kinds simple/proj/inj")
    c.add_argument("--field", default="Q", help="Q (default) or F<p>")
    c.add_argument("--out", help="output path (stdout JSON if omitted)")
    c.set_defaults(func=_cmd_construct)

    k = sub.add_parser("check", help="decide a property of a module file")
    k.add_argument("property", choices=("eip", "ekp", "crj", "cjt"))
    k.add_argument("--file", required=True, help="module file path")
    k.add_argument("--strategy", default="auto",
                   choices=("auto",) + STRATEGIES)
    k.add_argument("--j", type=int, help="power for crj")
    k.set_defaults(func=_cmd_check)

    t = sub.add_parser("tau", help="translate of a module file")
    t.add_argument("--file", required=True, help="module file path")
    t.add_argument("--inverse", action="store_true",
                   help="apply the inverse translate")
    t.add_argument("--out", help="output path (stdout JSON if omitted)")
    t.set_defaults(func=_cmd_tau)

    w = sub.add_parser("component", help="window of a translate orbit")
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--r", type=int, required=True)
    w.add_argument("--m", type=int, required=True)
    w.add_argument("--radius", type=int, default=2,
                   help="translate steps each way (default 2)")
    w.add_argument("--quasi-length", dest="quasi_length", type=int, default=1,
                   help="tower height above each mouth module (default 1)")
    w.add_argument("--strategy", default="auto",
                   choices=("auto",) + STRATEGIES)
    w.add_argument("--format", default="json",
                   choices=("json", "dot", "ascii"))
    w.set_defaults(func=_cmd_component)

    v = sub.add_parser("verify", help="run the acceptance suite")
    v.add_argument("--suite", default="paper", choices=("paper", "quick"))
    v.add_argument("--max-m", dest="max_m", type=int,
                   help="truncate family-parameter grids at this value")
    v.add_argument("--grid", type=int,
                   help="truncate the vertex-count grids at this value")
    v.set_defaults(func=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _BUDGET_ERRORS as exc:
        print(f"error: certificate budget exhausted: {exc}", file=sys.stderr)
        return 3
    except (_CliError, ModuleFileError, UnsupportedFieldOperation, ValueError,
            FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
