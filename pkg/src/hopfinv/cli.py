"""Command-line interface.

Exit codes: 0 success, 1 parse or validation error, 2 axiom or good pair
failure, 3 construction refused because (A5) fails, 4 oracle budget
exceeded.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional

from .engine import NotInvolutoryError, evaluate_invariant, gamma_exponent
from .graded import GradingError, sigma_of
from .heegaard import (
    DiagramError,
    apply_move,
    builtin_diagram,
    parse_diagram,
    parse_move,
    serialize_diagram,
)
from .hopf import AlgebraSpecError, check_axioms, dual_hopf, parse_algebra_spec
from .integrals import (
    A5Violation,
    GoodPair,
    GoodPairFormatError,
    IntegralError,
    build_good_pair,
    build_integral_data,
    check_good_pair,
    good_pair_lemma_suite,
    lemma_suite,
)
from .invariance import check_moves, corpus
from .oracle import OracleBudgetError, dense_invariant
from .scalars import format_scalar

EXIT_OK, EXIT_PARSE, EXIT_AXIOM, EXIT_A5, EXIT_BUDGET = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}", EXIT_PARSE) from None


def _algebra(spec: Optional[str]):
    if not spec:
        raise CliError("--algebra is required", EXIT_PARSE)
    return parse_algebra_spec(spec)


def _diagram(src: Optional[str]):
    if not src:
        raise CliError("--diagram is required", EXIT_PARSE)
    if src.startswith("builtin:"):
        return builtin_diagram(src)
    return parse_diagram(_read(src))


def _pair(H, src: Optional[str]) -> GoodPair:
    if src in (None, "auto"):
        report = check_axioms(H)
        if not report.passed():
            raise CliError("Hopf algebra axioms fail:\n" + str(report), EXIT_AXIOM)
        try:
            return build_good_pair(build_integral_data(H))
        except A5Violation as exc:
            raise CliError(str(exc), EXIT_A5) from None
        except IntegralError as exc:
            raise CliError(f"assumption (A1) surrogate not met: {exc}", EXIT_AXIOM) from None
    return GoodPair.from_text(_read(src), H)


def _emit(text: str, out: Optional[str]):
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_invariant(args) -> int:
    H = _algebra(args.algebra)
    pair = _pair(H, args.pair)
    D = _diagram(args.diagram)
    trace: Optional[List[str]] = [] if args.verbose else None
    value = evaluate_invariant(H, pair, D, trace=trace)
    sI = sigma_of(pair.I)
    lines = [format_scalar(value),
             f"nu {format_scalar(pair.nu)}",
             f"sigma_I {format_scalar(sI)}",
             f"gamma {gamma_exponent(sI, pair.nu)}"]
    if trace is not None:
        for line in trace:
            print(line, file=sys.stderr)
    if args.oracle:
        try:
            dense = dense_invariant(H, pair, D)
        except OracleBudgetError as exc:
            raise CliError(str(exc), EXIT_BUDGET) from None
        if dense != value:
            raise CliError(f"dense oracle disagrees: {format_scalar(dense)}", EXIT_AXIOM)
        lines.append(f"oracle {format_scalar(dense)} agrees")
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK


def cmd_check_hopf(args) -> int:
    H = _algebra(args.algebra)
    if args.dual:
        H = dual_hopf(H)
    report = check_axioms(H)
    _emit(f"algebra {H.name} (dim {H.dim})\n" + str(report) + "\n", args.out)
    return EXIT_OK if report.passed() else EXIT_AXIOM


def cmd_check_goodpair(args) -> int:
    H = _algebra(args.algebra)
    pair = _pair(H, args.pair)
    report, nu, gamma, _, _ = check_good_pair(H, pair.phi, pair.Omega, pair.f, pair.h)
    _emit(str(report) + "\n", args.out)
    return EXIT_OK if report.passed() else EXIT_AXIOM


def cmd_goodpair(args) -> int:
    H = _algebra(args.algebra)
    pair = _pair(H, "auto")
    _emit(pair.to_text(), args.out)
    return EXIT_OK


def cmd_moves(args) -> int:
    D = _diagram(args.diagram)
    for text in args.move or []:
        D = apply_move(D, parse_move(text))
    _emit(serialize_diagram(D), args.out)
    return EXIT_OK


def cmd_suite(args) -> int:
    H = _algebra(args.algebra)
    pair = _pair(H, args.pair)
    lines = [f"algebra {H.name}"]
    ok = True
    if args.pair in (None, "auto"):
        lem = lemma_suite(build_integral_data(H))
        lines += ["integral lemma: " + l for l in lem.lines()]
        ok = ok and lem.passed()
    gp = good_pair_lemma_suite(pair)
    lines += ["good pair lemma: " + l for l in gp.lines()]
    ok = ok and gp.passed()
    res = check_moves(H, pair, corpus(args.count, args.seed))
    lines.append(f"moves: {res.checked} checked, {len(res.failures)} failed")
    lines += ["  " + f for f in res.failures[:20]]
    ok = ok and res.ok
    lines.append("suite " + ("passed" if ok else "FAILED"))
    _emit("\n".join(lines) + "\n", args.out)
    return EXIT_OK if ok else EXIT_AXIOM


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hopfinv",
        description="Exact 3-manifold invariants from involutory Hopf algebras "
                    "and Heegaard diagrams.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, pair=False, diagram=False):
        sp.add_argument("--algebra", help="group:<n>, hn:<n>:<c> or anomega:<n1>:<n2>:<r>")
        if pair:
            sp.add_argument("--pair", default="auto", help="'auto' or a good pair file")
        if diagram:
            sp.add_argument("--diagram",
                            help="diagram file, builtin:lens:<p>, builtin:s1xs2 or builtin:poincare")
        sp.add_argument("--out", default="-", help="output path ('-' for stdout)")

    sp = sub.add_parser("invariant", help="compute the invariant of a diagram")
    common(sp, pair=True, diagram=True)
    sp.add_argument("--oracle", action="store_true", help="cross-check with the dense oracle")
    sp.add_argument("--verbose", action="store_true", help="per-stage term counts on stderr")
    sp.set_defaults(func=cmd_invariant)

    sp = sub.add_parser("check-hopf", help="verify the Hopf algebra axioms")
    common(sp)
    sp.add_argument("--dual", action="store_true", help="check the dual Hopf algebra instead")
    sp.set_defaults(func=cmd_check_hopf)

    sp = sub.add_parser("check-goodpair", help="verify (GP1)-(GP5) for a pair")
    common(sp, pair=True)
    sp.set_defaults(func=cmd_check_goodpair)

    sp = sub.add_parser("goodpair", help="build the good pair from (co)integrals")
    common(sp)
    sp.set_defaults(func=cmd_goodpair)

    sp = sub.add_parser("moves", help="apply moves to a diagram")
    sp.add_argument("--diagram")
    sp.add_argument("--move", action="append",
                    help="e.g. handle_slide:upper:0:1 (repeatable, applied in order)")
    sp.add_argument("--out", default="-")
    sp.set_defaults(func=cmd_moves)

    sp = sub.add_parser("suite", help="run lemma suites and the move-invariance corpus")
    common(sp, pair=True)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--count", type=int, default=20, help="number of random diagrams")
    sp.set_defaults(func=cmd_suite)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (AlgebraSpecError, DiagramError, GoodPairFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NotInvolutoryError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_AXIOM
    except (GradingError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
