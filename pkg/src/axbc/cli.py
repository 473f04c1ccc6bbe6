"""Command-line front end.

Exit codes: 0 success, 1 input error, 2 inconsistent system,
3 verification failure.
"""

from __future__ import annotations

import argparse
import os
import random
import sys
from fractions import Fraction

from . import bench, parametric
from .errors import AXBError, NoSolutionError, ParseError, ShapeError, UnboundParameterError
from .exact import Matrix, format_matrix, parse_matrix, parse_scalar
from .factorization import RankNormalForm, RohdeBlocks, rank, rohde_one_inverse, verify_rank_normal_form
from .kron_route import (kron_factorization, kron_general_solution, kron_one_inverse,
                         tail_certificate, transformed_rhs)
from .solver import certificate, check_shapes, factor, general_solution, residual, transform_rhs

EXIT_OK, EXIT_INPUT, EXIT_INCONSISTENT, EXIT_VERIFY = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _read(arg: str) -> tuple[str, str]:
    """Return ``(label, text)``; ``arg`` is a path, ``-`` for stdin, or inline rows split by ``;``."""
    if arg == "-":
        return "<stdin>", sys.stdin.read()
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return arg, fh.read()
    return "<inline>", arg.replace(";", "\n")


def load_matrix(arg: str, name: str) -> Matrix:
    label, text = _read(arg)
    try:
        return parse_matrix(text)
    except ParseError as exc:
        raise InputError(f"{name} ({label}): {exc}") from None


def parse_witness_file(text: str) -> dict[str, Matrix]:
    """Sections headed ``Q:``, ``P:``, ``R:``, ``S:``, each followed by a matrix."""
    sections: dict[str, list[str]] = {}
    starts: dict[str, int] = {}
    current = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        head = raw.split("#", 1)[0].strip()
        if head in ("Q:", "P:", "R:", "S:"):
            current = head[0]
            if current in sections:
                raise ParseError(f"duplicate section {head}", lineno, 1)
            sections[current] = []
            starts[current] = lineno + 1
            continue
        if current is None:
            if head:
                raise ParseError("content before the first section header", lineno, 1)
            continue
        sections[current].append(raw)
    return {name: parse_matrix("\n".join(lines), starts[name]) for name, lines in sections.items()}


def _witness(M: Matrix, left: Matrix, right: Matrix, label: str) -> RankNormalForm:
    try:
        f = RankNormalForm(left, right, rank(left @ M @ right))
        ok = verify_rank_normal_form(M, f)
    except ShapeError as exc:
        raise InputError(f"witnesses for {label}: {exc}") from None
    if not ok:
        raise InputError(f"witnesses for {label} do not bring it to rank normal form")
    return f


def load_witnesses(path: str | None, A: Matrix, B: Matrix | None) -> tuple:
    if path is None:
        return None, None
    label, text = _read(path)
    try:
        w = parse_witness_file(text)
    except ParseError as exc:
        raise InputError(f"witness file ({label}): {exc}") from None
    fA = fB = None
    if ("Q" in w) != ("P" in w) or ("R" in w) != ("S" in w):
        raise InputError("witness file must give Q with P and R with S")
    if "Q" in w:
        fA = _witness(A, w["Q"], w["P"], "A")
    if "R" in w and B is not None:
        fB = _witness(B, w["R"], w["S"], "B")
    return fA, fB


def load_problem(args) -> tuple[Matrix, Matrix, Matrix, RankNormalForm | None, RankNormalForm | None]:
    A = load_matrix(args.A, "A")
    B = load_matrix(args.B, "B")
    C = load_matrix(args.C, "C")
    try:
        check_shapes(A, B, C)
    except ShapeError as exc:
        raise InputError(str(exc)) from None
    fA, fB = load_witnesses(args.inject_witnesses, A, B)
    return A, B, C, fA, fB


def parse_params(text: str) -> dict[str, Fraction]:
    values = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        name, eq, value = item.partition("=")
        if not eq or not name.strip():
            raise InputError(f"--params entry {item!r} is not name=value")
        try:
            values[name.strip()] = parse_scalar(value.strip())
        except ParseError as exc:
            raise InputError(f"--params {name.strip()}: {exc}") from None
    return values


def _print_certificate(cert: dict, out) -> None:
    for label, off in cert.items():
        positions = ", ".join(f"({i},{j})={v}" for i, j, v in off.entries)
        print(f"{label} nonzero: {positions}", file=out)
        print(f"{label} largest |numerator| at {off.largest}", file=out)


# --- commands --------------------------------------------------------------

def cmd_check(args) -> int:
    A, B, C, fA, fB = load_problem(args)
    fA, fB = factor(A, fA, "A"), factor(B, fB, "B")
    if args.route == "kron":
        kf = kron_factorization(A, B, fA, fB)
        c2 = transformed_rhs(kf, C)
        cert = tail_certificate(c2, kf.rank)
        detail = "c'' = " + " ".join(str(x) for x in c2.entries)
    else:
        Cp = transform_rhs(C, fA, fB)
        cert = certificate(Cp, fA.rank, fB.rank)
        detail = "C' = QCS:\n" + format_matrix(Cp)
    print("CONSISTENT" if not cert else "INCONSISTENT")
    print(f"rank(A) = {fA.rank}, rank(B) = {fB.rank}")
    print(detail)
    _print_certificate(cert, sys.stdout)
    return EXIT_OK if not cert else EXIT_INCONSISTENT


def _names(args) -> str:
    if args.names:
        return args.names
    return "greek" if args.format == "latex" else "plain"


def cmd_solve(args) -> int:
    A, B, C, fA, fB = load_problem(args)
    naming = _names(args)
    try:
        if args.route == "kron":
            sol = kron_general_solution(kron_factorization(A, B, fA, fB), C, naming)
        else:
            sol = general_solution(A, B, C, fA, fB, naming)
    except NoSolutionError as exc:
        print("INCONSISTENT")
        print(exc)
        _print_certificate(exc.certificate, sys.stdout)
        return EXIT_INCONSISTENT
    X = sol.X
    count = sol.param_count
    if args.format == "json":
        print(parametric.dumps(X, param_count=count, route=sol.route))
    elif args.format == "latex":
        print(parametric.to_latex(X))
        print(f"% {count} parameters")
    else:
        print(f"# route: {sol.route}")
        print(f"# {count} parameters" + (": " + " ".join(X.names) if count else ""))
        print(parametric.format_parametric(X))
    return EXIT_OK


def load_candidate(arg: str) -> parametric.ParametricMatrix:
    label, text = _read(arg)
    try:
        if text.lstrip().startswith("{"):
            return parametric.loads(text)
        return parametric.parse_parametric(text)
    except ParseError as exc:
        raise InputError(f"X ({label}): {exc}") from None


def cmd_verify(args) -> int:
    A, B, C, _, _ = load_problem(args)
    X = load_candidate(args.X)
    if args.params:
        values = parse_params(args.params)
    elif args.random_params:
        rng = random.Random(args.seed)
        values = {n: Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for n in X.names}
    else:
        values = {}
    try:
        Xv = X.substitute(values)
        res = residual(A, B, C, Xv)
    except UnboundParameterError as exc:
        raise InputError(f"{exc}; pass --params or --random-params") from None
    except ShapeError as exc:
        raise InputError(str(exc)) from None
    if res.is_zero():
        print("PASS: A X B = C")
        return EXIT_OK
    print("FAIL: residual A X B - C =")
    print(format_matrix(res))
    return EXIT_VERIFY


def cmd_oneinv(args) -> int:
    A = load_matrix(args.A, "A")
    B = load_matrix(args.B, "B") if args.B else None
    fA, fB = load_witnesses(args.inject_witnesses, A, B)
    fA = fA or factor(A, None)
    rng = random.Random(args.seed) if args.random_blocks else None
    if B is None:
        f = fA
        target = "A"
        G = rohde_one_inverse(f, RohdeBlocks.random(rng, f.rank, f.m, f.n) if rng else None)
    else:
        kf = kron_factorization(A, B, fA, fB)
        f = kf.as_rank_normal_form()
        target = "B^T kron A"
        G = kron_one_inverse(kf, RohdeBlocks.random(rng, f.rank, f.m, f.n) if rng else None)
    print(f"# {{1}}-inverse of {target} (rank {f.rank}), {G.rows}x{G.cols}")
    print(format_matrix(G))
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.max_dim < 1 or args.count < 0:
        raise InputError("--max-dim must be >= 1 and --count >= 0")
    rows = bench.run(args.max_dim, args.count, args.seed, args.sweep)
    bench.write_csv(rows, sys.stdout)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="axbc", description="Exact consistency test and general solution of A X B = C.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def problem(sp, with_c=True):
        sp.add_argument("-A", required=True, help="matrix file, '-' for stdin, or inline rows 'a b; c d'")
        sp.add_argument("-B", required=True)
        sp.add_argument("-C", required=True)
        sp.add_argument("--inject-witnesses", metavar="FILE",
                        help="file with Q:, P:, R:, S: sections used instead of computed rank normal forms")

    def route(sp):
        sp.add_argument("--route", choices=("direct", "kron"), default="direct")

    sp = sub.add_parser("check", help="decide consistency and print the certificate")
    problem(sp)
    route(sp)
    sp.set_defaults(func=cmd_check)

    for name, forced in (("solve", None), ("kron-solve", "kron")):
        sp = sub.add_parser(name, help="print the general solution")
        problem(sp)
        if forced:
            sp.set_defaults(route=forced)
        else:
            route(sp)
        sp.add_argument("--format", choices=("text", "json", "latex"), default="text")
        sp.add_argument("--names", choices=("plain", "greek"),
                        help="parameter naming (default: greek for latex, plain otherwise)")
        sp.set_defaults(func=cmd_solve)

    sp = sub.add_parser("oneinv", help="print a Rohde-form {1}-inverse of A (or of B^T kron A with -B)")
    sp.add_argument("-A", required=True)
    sp.add_argument("-B")
    sp.add_argument("--inject-witnesses", metavar="FILE")
    sp.add_argument("--random-blocks", action="store_true", help="random U, V, W instead of zeros")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_oneinv)

    sp = sub.add_parser("verify", help="check A X B = C for a candidate or parametric X")
    problem(sp)
    sp.add_argument("--X", required=True, help="matrix, parametric text, or solve --format json output")
    sp.add_argument("--params", help="parameter values 'name=p/q,...'")
    sp.add_argument("--random-params", action="store_true")
    sp.add_argument("--seed", type=int, default=0)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("bench", help="time direct vs Kronecker route, CSV on stdout")
    sp.add_argument("--max-dim", type=int, default=4)
    sp.add_argument("--count", type=int, default=10)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--sweep", action="store_true", help="square instances for every d in 1..max-dim")
    sp.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, AXBError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
