"""Command-line front end.

Exit codes: 0 success / member / pass / central, 1 non-member / fail /
non-central (a certificate is printed), 2 usage or input error, 3 when an
enumeration budget runs out.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .expr import to_text
from .generation import TrivialLoopError, generator_set, synthesize_witness
from .lattice import Element, ModeError, bracket
from .oracle import BUDGET_ENV, Window, default_budget, jacobi_fuzz, reachable_classes
from .serialize import dumps, element_payload, witness_payload
from .structure import center_check, derived_membership, lcs_member, normalize_mode, z_generation_obstruction
from .syntax import ParseError, format_class, format_element, parse_element

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _element(text: str, integral: bool = False) -> Element:
    try:
        return parse_element(text, integral=integral)
    except ParseError as exc:
        raise UsageError(f"cannot parse {text!r}: {exc}") from None


def _emit(args, kind: str, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(dumps(kind, payload))
    else:
        for line in lines:
            print(line)


def _certificate_lines(cert) -> list[str]:
    lines = [cert.verdict]
    if cert.witness is not None:
        lines.append(f"witness: {to_text(cert.witness)}")
    if cert.obstruction is not None:
        lines.append(f"obstruction: {cert.obstruction.describe()}")
    return lines


def cmd_bracket(args) -> int:
    x, y = _element(args.x), _element(args.y)
    result = bracket(x, y)
    _emit(args, "element", element_payload(result), [format_element(result)])
    return EXIT_OK


def cmd_witness(args) -> int:
    gens = generator_set(args.gens)
    try:
        expr = synthesize_witness((args.i, args.j), gens)
    except TrivialLoopError as exc:
        raise UsageError(str(exc)) from None
    payload = witness_payload((args.i, args.j), args.gens, expr)
    s = payload["stats"]
    _emit(args, "witness", payload, [
        payload["text"],
        f"# depth {s['depth']}, nodes {s['node_count']}, max denominator {s['max_scalar_denominator']}",
    ])
    return EXIT_OK


def cmd_member_derived(args) -> int:
    mode = normalize_mode(args.mode)
    cert = derived_membership(_element(args.x, mode == "integer"), mode)
    _emit(args, "certificate", cert.to_json(), _certificate_lines(cert))
    return EXIT_OK if cert.member else EXIT_NEGATIVE


def cmd_lcs(args) -> int:
    mode = normalize_mode(args.mode)
    if args.depth < 1:
        raise UsageError("--depth must be at least 1")
    cert = lcs_member(_element(args.x, mode == "integer"), args.depth, mode)
    _emit(args, "certificate", cert.to_json(), _certificate_lines(cert))
    return EXIT_OK if cert.member else EXIT_NEGATIVE


def cmd_obstruction(args) -> int:
    if args.n < 2:
        raise UsageError("n must be at least 2")
    cert = z_generation_obstruction(args.n)
    _emit(args, "certificate", cert.to_json(), _certificate_lines(cert))
    return EXIT_NEGATIVE


def cmd_center(args) -> int:
    if args.window < 1:
        raise UsageError("--window must be at least 1")
    verdict = center_check(_element(args.x), args.window)
    lines = [verdict.to_json()["verdict"]]
    if verdict.partner is not None:
        lines.append(f"partner: {format_class(verdict.partner)}")
        lines.append(f"bracket: {format_element(verdict.value)}")
    _emit(args, "center", verdict.to_json(), lines)
    return EXIT_OK if verdict.central else EXIT_NEGATIVE


def cmd_fuzz(args) -> int:
    if args.trials < 1:
        raise UsageError("--trials must be at least 1")
    report = jacobi_fuzz(args.trials, args.bound, args.seed)
    lines = [f"{'pass' if report.passed else 'FAIL'}: {report.trials_run}/{report.trials} trials, seed {report.seed}, bound {report.bound}"]
    if report.failure:
        f = report.failure
        lines += [f"x = {f['x']}", f"y = {f['y']}", f"z = {f['z']}"]
    _emit(args, "fuzz", report.to_json(), lines)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


def cmd_oracle_reach(args) -> int:
    try:
        window = Window(args.n, args.max_divisor, args.depth)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    budget = args.budget if args.budget is not None else default_budget()
    gens = generator_set(args.gens)
    print(f"# at most {window.estimate()} brackets, budget {budget}", file=sys.stderr)
    report = reachable_classes(gens, window, args.mode, budget)
    lines = [
        f"generators: {', '.join(report.generators)} ({report.mode} mode)",
        f"level ranks: {report.level_ranks}; brackets {report.brackets_evaluated}; "
        f"origin hits {report.origin_hits}; {'saturated' if report.saturated else 'depth limit reached'}",
        "reachable: " + " ".join(format_class(c) for c in report.reachable),
        "unreached within budget: " + (" ".join(format_class(c) for c in report.unreached) or "none"),
    ]
    if report.truncated:
        lines.append(f"TRUNCATED after {report.brackets_evaluated} brackets; raise --budget or {BUDGET_ENV}")
    _emit(args, "reach", report.to_json(), lines)
    return EXIT_BUDGET if report.truncated else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(
        prog="goldman-torus",
        description="Exact computations in the Goldman Lie algebra of the closed torus.",
    )
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bracket", parents=[common], help="bracket two elements")
    p.add_argument("x")
    p.add_argument("y")
    p.set_defaults(func=cmd_bracket)

    p = sub.add_parser("witness", parents=[common], help="generation witness for a^i b^j")
    p.add_argument("i", type=int)
    p.add_argument("j", type=int)
    p.add_argument("--gens", choices=["standard", "refined"], default="standard")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("member-derived", parents=[common], help="membership in [G, G]")
    p.add_argument("x")
    p.add_argument("--mode", choices=["z", "q"], default="z")
    p.set_defaults(func=cmd_member_derived)

    p = sub.add_parser("lcs", parents=[common], help="membership in the k-th lower central series term")
    p.add_argument("x")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--mode", choices=["z", "q"], default="z")
    p.set_defaults(func=cmd_lcs)

    p = sub.add_parser("obstruction", parents=[common], help="certificate that (n-1)a^n is not in [G, G] over Z")
    p.add_argument("n", type=int)
    p.set_defaults(func=cmd_obstruction)

    p = sub.add_parser("center", parents=[common], help="centrality on a window")
    p.add_argument("x")
    p.add_argument("--window", type=int, required=True)
    p.set_defaults(func=cmd_center)

    p = sub.add_parser("fuzz", parents=[common], help="seeded antisymmetry/Jacobi check")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--bound", type=int, default=20)
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("oracle-reach", parents=[common], help="brute-force closure of a generator set")
    p.add_argument("--n", type=int, required=True, help="exponent bound")
    p.add_argument("--depth", type=int, required=True, help="bracket depth")
    p.add_argument("--gens", choices=["standard", "refined"], default="standard")
    p.add_argument("--mode", choices=["z", "q"], default="q")
    p.add_argument("--max-divisor", type=int, default=10, help="largest divisor in rational mode")
    p.add_argument("--budget", type=int, default=None, help=f"bracket budget (default from {BUDGET_ENV})")
    p.set_defaults(func=cmd_oracle_reach)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, ModeError, ValueError) as exc:
        print(f"goldman-torus {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
