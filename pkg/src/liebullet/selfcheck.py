"""Named identity checks run by ``liebullet selfcheck``.

Each check returns ``(passed, detail)``.  The ``fast`` level uses small
truncations; ``full`` uses the sizes of the acceptance suite.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass

from .algebra import bracket, component, make_context
from .bch import bch, bullet, bullet_many, bullet_universal
from .correctors import bullet_cycle_left, bullet_cycle_right, sigma, solve_translation, tau
from .differential import Derivation, contractible_algebra, exactness_report, theta_tilde
from .rational import mpq
from .series import exp_ad, f_coefficients, series_product, xi_coefficients
from .simplices import build_model, verify_model

__all__ = ["SelfCheckResult", "run_selfcheck", "random_element", "LEVELS"]

LEVELS = ("fast", "full")


@dataclass(frozen=True)
class SelfCheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def random_element(rng, context, degree, max_length=None, terms=4, coeff=3):
    """A pseudo-random sum of brackets of generators, homogeneous of ``degree``."""
    gens = [context.gen(n) for n in context.names]
    max_length = max_length or context.truncation
    x = context.zero()
    tries = 0
    while len(x.terms()) < terms and tries < 50 * terms:
        tries += 1
        length = rng.randint(1, max_length)
        picks = [rng.choice(gens) for _ in range(length)]
        y = picks[-1]
        for g in reversed(picks[:-1]):
            y = bracket(g, y)
        if y and y.is_homogeneous(degree):
            x = x + y.scale(mpq(rng.randint(-coeff, coeff) or 1, rng.randint(1, coeff)))
    return x


def _pairs(rng, A, count, max_length=2):
    return [
        (random_element(rng, A.context, 1, max_length), random_element(rng, A.context, 1, max_length))
        for _ in range(count)
    ]


def _section(N, count):
    A = contractible_algebra(2, N)
    rng = random.Random(1)
    xs = [random_element(rng, A.context, 0) for _ in range(count)]
    bad = sum(1 for x in xs if A.d(theta_tilde(x, A.theta)) != x)
    return not bad, f"{count - bad}/{count} elements"


def _exactness(N, _):
    out = []
    for k in (1, 2):
        A = contractible_algebra(k, N)
        r = exactness_report(A.presentation, N)
        out.append(r.exact)
    return all(out), f"lengths <= {N}"


def _bch_terms(N, _):
    A = contractible_algebra(2, N)
    x, y = A.v(1), A.v(2)
    xy = bracket(x, y)
    want = x + y + xy / 2 + bracket(x, xy) / 12 - bracket(y, xy) / 12
    got = bch(x, y)
    low = sum((component(got, n) for n in range(1, 4)), A.context.zero())
    return low == want, "through length 3"


def _d_bullet(N, count):
    A = contractible_algebra(2, N)
    rng = random.Random(2)
    d = A.d
    ok = all(d(bullet(d, a, b)) == bch(d(a), d(b)) for a, b in _pairs(rng, A, count))
    return ok, f"{count} pairs"


def _group(N, _):
    A = contractible_algebra(2, N)
    d, u1, u2 = A.d, A.u(1), A.u(2)
    zero = A.context.zero()
    ok = bullet(d, u1, zero) == u1 and bullet(d, zero, u2) == u2
    ok = ok and not bullet(d, u1, -u1) and not bullet(d, -u1, u1)
    return ok, "identity and inverse"


def _associativity(N, _):
    A = contractible_algebra(3, N)
    d, u = A.d, [A.u(i) for i in (1, 2, 3)]
    left = bullet(d, bullet(d, u[0], u[1]), u[2])
    right = bullet(d, u[0], bullet(d, u[1], u[2]))
    whole = bullet_many(d, u)
    ok = left == right == whole
    if ok:
        return True, "generators of the 3-variable algebra"
    low = min((left - right).min_length() or N + 1, (whole - left).min_length() or N + 1)
    return False, f"products differ from word length {low}"


def _conjugation(N, count):
    A = contractible_algebra(2, N)
    rng = random.Random(3)
    d = A.d
    ok = True
    for al, be in _pairs(rng, A, count):
        lhs = bullet_many(d, [al, be, -al])
        e = exp_ad(d(al), be)
        ok = ok and lhs == e - d(sigma(d, al, be))
        ok = ok and lhs == bullet(d, e, -d(tau(d, al, be)))
    return ok, f"sigma and tau forms on {count} pairs"


def _cycles(N, count):
    base = contractible_algebra(2, N).context
    ctx = make_context(list(zip(base.names, base.degrees)) + [("c", 1)], N)
    d = Derivation(ctx, -1, {f"u{i}": ctx.gen(f"v{i}") for i in (1, 2)})
    rng = random.Random(4)
    ok = True
    for _ in range(count):
        al = random_element(rng, ctx, 1, 2)
        c = ctx.gen("c")
        ok = ok and bullet_cycle_right(d, al, c) == bullet(d, al, c)
        ok = ok and bullet_cycle_left(d, c, al) == bullet(d, c, al)
        ok = ok and bullet(d, al, solve_translation(d, al, c)) == al + c
    return ok, f"{count} elements against a cycle generator"


def _coefficients(N, _):
    A = xi_coefficients(12)
    f = f_coefficients(12)
    ok = list(A)[:4] == [1, mpq(-1, 4), mpq(5, 144), mpq(-1, 576)]
    ok = ok and series_product(list(A), list(f), 12) == [1] + [0] * 12
    return ok, f"A_4 = {A[4]}"


def _universal(N, _):
    A = contractible_algebra(2, N)
    return A.d(bullet_universal(2, N)) == bch(A.v(1), A.v(2)), "d(u1 • u2) = v1 * v2"


def _models(levels):
    def check(N, _):
        bad = []
        for n, M in levels:
            r = verify_model(build_model(n, M))
            if not r.passed:
                bad.append(f"L{n}@{M}: " + ", ".join(c.name for c in r.checks if not c.passed))
        return not bad, "; ".join(bad) or ", ".join(f"L{n}@{M}" for n, M in levels)

    return check


_FAST = [
    ("bch_lowest_terms", _bch_terms, 4, 0),
    ("section_of_d", _section, 5, 20),
    ("contractible_exactness", _exactness, 3, 0),
    ("universal_bullet", _universal, 5, 0),
    ("d_of_bullet", _d_bullet, 4, 5),
    ("bullet_identity_inverse", _group, 5, 0),
    ("bullet_associativity", _associativity, 4, 0),
    ("conjugation_laws", _conjugation, 4, 3),
    ("products_with_cycles", _cycles, 5, 3),
    ("coefficient_tables", _coefficients, 0, 0),
    ("simplex_models", _models([(0, 6), (1, 5), (2, 4), (3, 4), (4, 3)]), 0, 0),
]

_FULL = [
    ("bch_lowest_terms", _bch_terms, 4, 0),
    ("section_of_d", _section, 8, 200),
    ("contractible_exactness", _exactness, 5, 0),
    ("universal_bullet", _universal, 8, 0),
    ("d_of_bullet", _d_bullet, 8, 10),
    ("bullet_identity_inverse", _group, 8, 0),
    ("bullet_associativity", _associativity, 6, 0),
    ("conjugation_laws", _conjugation, 6, 5),
    ("products_with_cycles", _cycles, 8, 5),
    ("coefficient_tables", _coefficients, 0, 0),
    ("simplex_models", _models([(0, 8), (1, 8), (2, 6), (3, 6), (4, 4)]), 0, 0),
]


def run_selfcheck(level: str = "fast"):
    """Yield a :class:`SelfCheckResult` per check, in a fixed order."""
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    for name, fn, N, count in _FAST if level == "fast" else _FULL:
        t = time.perf_counter()
        passed, detail = fn(N, count)
        yield SelfCheckResult(name, bool(passed), detail, time.perf_counter() - t)
