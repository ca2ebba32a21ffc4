"""Command-line interface: ``jpineiro {poly,ode,spaces,verify,sweep}``.

Exit status: 0 success, 1 verification failure, 2 usage or parameter error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict

from .exact import as_fraction
from .pineiro import (
    DegenerateParameters,
    InconsistentParameters,
    ParameterSet,
    ShapeError,
    build_annihilator,
    build_dual_operator,
    build_U_from_V,
    build_V,
    p_via_orthogonality,
    rodrigues,
    v0_via_recursion,
)
from .verify import DEFAULT_SEED, SweepConfig, reports_to_json, summarize, sweep, verify_all

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

ROUTES = {
    "recursion": v0_via_recursion,
    "rodrigues": rodrigues,
    "orthogonality": p_via_orthogonality,
}


class UsageError(Exception):
    pass


def _rationals(text: str) -> list:
    try:
        return [as_fraction(part) for part in text.split(",")]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"invalid rational list {text!r}: {exc}") from None


def _integers(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",")]
    except ValueError:
        raise UsageError(f"invalid integer list {text!r}") from None


def parse_params(args) -> ParameterSet:
    if args.m is None or args.l is None or args.k is None:
        raise UsageError("--m, --l and --k are required")
    m, l, k = _rationals(args.m), _integers(args.l), _rationals(args.k)
    if len(k) != 1:
        raise UsageError("--k takes a single rational")
    if args.r is not None and args.r != len(m):
        raise UsageError(f"--r {args.r} does not match {len(m)} values of --m")
    try:
        return ParameterSet(tuple(m), tuple(l), k[0])
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _ordering(args):
    if getattr(args, "ordering", None) is None:
        return None
    return _integers(args.ordering)


def _emit(payload: dict, text: str, latex: str | None, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=1))
    elif fmt == "latex":
        print(latex if latex is not None else text)
    else:
        print(text)


def cmd_poly(args) -> int:
    p = parse_params(args)
    route = args.route or ("recursion" if p.consistent else "orthogonality")
    if route == "recursion":
        poly = v0_via_recursion(p, _ordering(args))
    else:
        poly = ROUTES[route](p)
    payload = {"params": p.to_json(), "result": {"route": route, "polynomial": poly.to_json()}}
    _emit(payload, str(poly), f"\\[ {poly.to_latex()} \\]", args.format)
    return EXIT_OK


def cmd_ode(args) -> int:
    if args.symbolic:
        raise UsageError("symbolic parameters are not supported; give exact rationals")
    p = parse_params(args)
    op = build_dual_operator(p) if args.dual else build_annihilator(p)
    name = "dual" if args.dual else "annihilator"
    payload = {"params": p.to_json(), "result": {"operator": name, "coefficients": op.to_json()}}
    lines = [f"c_{i} = {c}" for i, c in enumerate(op.coeffs)]
    text = "\n".join([str(op)] + lines)
    _emit(payload, text, f"\\[ {op.to_latex()} \\]", args.format)
    return EXIT_OK


def cmd_spaces(args) -> int:
    p = parse_params(args)
    V = build_V(p, _ordering(args))
    U = build_U_from_V(V)
    payload = {"params": p.to_json(), "result": {"V": V.to_json(), "U": U.to_json()}}
    text = "\n".join(
        ["V (first type):"]
        + [f"  {e}" for e in V.elements]
        + ["U (second type):"]
        + [f"  {e}" for e in U.elements]
    )
    latex = "\\[ V = \\langle " + ",\\ ".join(e.to_latex() for e in V.elements) + " \\rangle \\]\n"
    latex += "\\[ U = \\langle " + ",\\ ".join(e.to_latex() for e in U.elements) + " \\rangle \\]"
    _emit(payload, text, latex, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    p = parse_params(args)
    report = verify_all(p)
    payload = {"params": p.to_json(), "report": report.to_json()}
    _emit(payload, report.to_text(), None, args.format)
    return EXIT_OK if report.passed else EXIT_FAIL


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("JP_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"JP_SEED must be an integer, got {env!r}") from None
    return DEFAULT_SEED


def cmd_sweep(args) -> int:
    config = SweepConfig(
        r_max=args.r_max,
        m_max=args.m_max,
        k_max=args.k_max,
        r_min=args.r_min,
        generic=args.generic,
        seed=_seed(args),
        jobs=args.jobs,
    )
    reports = sweep(config)
    summary = summarize(reports)
    if args.format == "json":
        payload = json.loads(reports_to_json(reports))
        print(json.dumps({"params": asdict(config), "report": payload}, indent=1))
    else:
        if args.verbose:
            for rep in reports:
                print(rep.to_text())
        for rep in reports:
            for c in rep.failures:
                print(f"FAIL {rep.params}: {c.name}: {c.detail}")
        width = max(len(n) for n in summary["checks"])
        print(f"cases: {summary['cases']}  failed cases: {summary['failed_cases']}  seed: {config.seed}")
        for name, counts in summary["checks"].items():
            print(f"  {name:<{width}}  pass {counts['pass']:>5}  fail {counts['fail']:>3}  skipped {counts['skipped']:>5}")
    return EXIT_OK if summary["failed_cases"] == 0 else EXIT_FAIL


def _add_params(sub: argparse.ArgumentParser, ordering: bool = False) -> None:
    sub.add_argument("--r", type=int, help="number of weights (must match --m)")
    sub.add_argument("--m", help="comma-separated rationals m_1..m_r, e.g. 1/2,3")
    sub.add_argument("--l", help="comma-separated integers l_1 >= ... >= l_r >= 0")
    sub.add_argument("--k", help="rational k")
    sub.add_argument("--format", choices=("text", "json", "latex"), default="text")
    if ordering:
        sub.add_argument("--ordering", help="step sequence i(1),...,i(k) for the recursion")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="jpineiro", description=__doc__.splitlines()[0])
    subs = parser.add_subparsers(dest="command", required=True)

    poly = subs.add_parser("poly", help="Jacobi-Piñeiro polynomial")
    _add_params(poly, ordering=True)
    poly.add_argument("--route", choices=tuple(ROUTES))
    poly.set_defaults(func=cmd_poly)

    ode = subs.add_parser("ode", help="annihilating differential operator")
    _add_params(ode)
    ode.add_argument("--dual", action="store_true", help="print the dual operator instead")
    ode.add_argument("--symbolic", action="store_true", help=argparse.SUPPRESS)
    ode.set_defaults(func=cmd_ode)

    spaces = subs.add_parser("spaces", help="bases of the first- and second-type spaces")
    _add_params(spaces, ordering=True)
    spaces.set_defaults(func=cmd_spaces)

    verify = subs.add_parser("verify", help="run every check for one parameter set")
    _add_params(verify)
    verify.set_defaults(func=cmd_verify)

    sw = subs.add_parser("sweep", help="verify all consistent parameters in a grid")
    sw.add_argument("--r-min", type=int, default=1)
    sw.add_argument("--r-max", type=int, default=3)
    sw.add_argument("--m-max", type=int, default=3)
    sw.add_argument("--k-max", type=int, default=4)
    sw.add_argument("--generic", type=int, default=0, help="number of random rational parameter sets")
    sw.add_argument("--seed", type=int, help="sampling seed (default: $JP_SEED or built-in)")
    sw.add_argument("--jobs", type=int, default=1)
    sw.add_argument("--format", choices=("text", "json"), default="text")
    sw.add_argument("-v", "--verbose", action="store_true")
    sw.set_defaults(func=cmd_sweep)
    return parser


_VALUE_FLAGS = ("--m", "--k")


def _attach_negative_values(argv: list[str]) -> list[str]:
    # argparse reads "-4/3" as an option; rewrite "--k -4/3" as "--k=-4/3"
    out: list[str] = []
    it = iter(argv)
    for token in it:
        if token in _VALUE_FLAGS:
            value = next(it, None)
            if value is not None and value.startswith("-"):
                out.append(f"{token}={value}")
                continue
            out.append(token)
            if value is not None:
                out.append(value)
            continue
        out.append(token)
    return out


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    args = parser.parse_args(_attach_negative_values(argv))
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"jpineiro: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateParameters, InconsistentParameters, ShapeError, ValueError) as exc:
        print(f"jpineiro: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
