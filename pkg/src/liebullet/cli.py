"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .algebra import AlgebraError
from .bch import bch, bullet
from .differential import DGLPresentation, Derivation, contractible_algebra
from .frontend.formatting import format_element
from .frontend.parser import parse_expression
from .frontend.serialization import deserialize_algebra, serialize_algebra
from .rational import format_rational, mpq
from .selfcheck import LEVELS, run_selfcheck
from .series import table
from .simplices import MAX_DIMENSION, build_model, verify_model

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# Value printed in the literature for A_4; the exact inversion differs from it.
_PRINTED_A4 = mpq(-4, 15829)


class UsageError(Exception):
    pass


def _load_algebra(source: str, trunc: int | None):
    """Return (presentation, theta or None) for a file path or a builtin name.

    Builtins: ``contractible:K`` (free on u1..uK, v1..vK with d u_i = v_i) and
    ``simplex:n`` (the model of the n-simplex).
    """
    if source.startswith("contractible:"):
        k = _int(source.split(":", 1)[1], "contractible size")
        A = contractible_algebra(k, trunc or 6)
        return A.presentation, A.theta
    if source.startswith("simplex:"):
        n = _int(source.split(":", 1)[1], "simplex dimension")
        model = build_model(n, trunc)
        return model.presentation, None
    path = Path(source)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from exc
    pres = deserialize_algebra(text, validate=False)
    if trunc is not None and trunc != pres.context.truncation:
        ctx = pres.context.with_truncation(trunc)
        images = {
            name: parse_expression(format_element(img), ctx)
            for name, img in pres.differential.images.items()
        }
        pres = DGLPresentation(ctx, Derivation(ctx, -1, images), validate=False)
    return pres, None


def _int(text: str, what: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {text!r}") from None


def _cmd_coeffs(args, out) -> int:
    if args.K < 0:
        raise UsageError("K must be non-negative")
    t = table(args.kind, args.K)
    for n, c in enumerate(t):
        print(f"{n} {format_rational(c)}", file=out)
    if args.kind == "xi" and args.K >= 4 and t[4] != _PRINTED_A4:
        print(
            f"note: computed A_4 = {format_rational(t[4])} differs from the "
            f"literature value {format_rational(_PRINTED_A4)}",
            file=out,
        )
    return EXIT_OK


def _cmd_eval(args, out) -> int:
    pres, theta = _load_algebra(args.algebra, args.trunc)
    x = parse_expression(args.expr, pres.context, pres.differential, theta)
    print(format_element(x, args.style), file=out)
    if args.diff:
        print(format_element(pres.differential(x), args.style), file=out)
    return EXIT_OK


def _cmd_product(args, out) -> int:
    pres, theta = _load_algebra(args.algebra, args.trunc)
    d = pres.differential
    x = parse_expression(args.x, pres.context, d, theta)
    y = parse_expression(args.y, pres.context, d, theta)
    z = bch(x, y) if args.command == "bch" else bullet(d, x, y)
    print(format_element(z, args.style), file=out)
    return EXIT_OK


def _cmd_model_build(args, out) -> int:
    model = build_model(args.n, args.trunc)
    text = serialize_algebra(model.presentation) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return EXIT_OK


def _cmd_model_verify(args, out) -> int:
    model = build_model(args.n, args.trunc)
    report = verify_model(model, threads=args.threads)
    print(f"model L{args.n} at truncation {model.truncation}", file=out)
    for c in report.checks:
        status = "PASS" if c.passed else "FAIL"
        print(f"{status} {c.name}: {c.detail}", file=out)
        for subject, length in c.failures:
            print(f"    {subject}: discrepancy from word length {length}", file=out)
    print("verified" if report.passed else "NOT verified", file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def _cmd_selfcheck(args, out) -> int:
    ok = True
    for r in run_selfcheck(args.level):
        ok = ok and r.passed
        status = "PASS" if r.passed else "FAIL"
        print(f"{status} {r.name}: {r.detail}", file=out)
    return EXIT_OK if ok else EXIT_FAIL


def _dimension(text: str) -> int:
    n = int(text)
    if not 0 <= n <= MAX_DIMENSION:
        raise argparse.ArgumentTypeError(f"dimension must be in 0..{MAX_DIMENSION}")
    return n


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="liebullet",
        description="Exact computations in truncated free differential graded Lie algebras.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("coeffs", help="print a coefficient table c_0..c_K")
    c.add_argument("kind", choices=["bernoulli", "f", "epsilon", "xi", "exp"])
    c.add_argument("K", type=int)
    c.set_defaults(func=_cmd_coeffs)

    def algebra_args(q):
        q.add_argument(
            "--algebra",
            required=True,
            help="algebra JSON file, or contractible:K, or simplex:n",
        )
        q.add_argument("--trunc", type=_positive, help="truncation N (overrides the file)")
        q.add_argument("--style", choices=["words", "brackets"], default="words")

    e = sub.add_parser("eval", help="evaluate an expression")
    algebra_args(e)
    e.add_argument("--diff", action="store_true", help="also print the differential of the value")
    e.add_argument("expr")
    e.set_defaults(func=_cmd_eval)

    for name, what in (("bch", "BCH product of two degree-0 elements"),
                       ("bullet", "bullet product of two degree-1 elements")):
        q = sub.add_parser(name, help=what)
        algebra_args(q)
        q.add_argument("x")
        q.add_argument("y")
        q.set_defaults(func=_cmd_product)

    m = sub.add_parser("model", help="simplex models")
    msub = m.add_subparsers(dest="action", required=True)
    b = msub.add_parser("build", help="build a model and print it as JSON")
    b.add_argument("n", type=_dimension)
    b.add_argument("--trunc", type=_positive)
    b.add_argument("--out")
    b.set_defaults(func=_cmd_model_build)
    v = msub.add_parser("verify", help="verify a model")
    v.add_argument("n", type=_dimension)
    v.add_argument("--trunc", type=_positive)
    v.add_argument("--threads", type=_positive, default=1)
    v.set_defaults(func=_cmd_model_verify)

    s = sub.add_parser("selfcheck", help="run the built-in identity checks")
    s.add_argument("--level", choices=LEVELS, default="fast")
    s.set_defaults(func=_cmd_selfcheck)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args, out)
    except (UsageError, AlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
