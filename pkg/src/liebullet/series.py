"""Power series in truncated tensor algebras and the coefficient sequences.

The coefficient sequences are

* ``bernoulli``: ``t/(e^t - 1) = sum B_n t^n / n!`` (so ``B_1 = -1/2``);
* ``f``: ``f_n = (-1)^n B_n / (n+1)!``, the series ``(1/t) ∫_0^t s/(1 - e^{-s}) ds``;
* ``epsilon``: ``(e^t - 1)/t``, i.e. ``1/(n+1)!``;
* ``xi``: the multiplicative inverse ``1/f``;
* ``exp``: ``1/n!``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .algebra import AlgebraError, Element, _add_into, _bracket, _clean, _mul, bracket
from .rational import ONE, ZERO, Q, factorial, mpq

__all__ = [
    "CoefficientTable",
    "exp",
    "log",
    "ad_apply",
    "ad_power",
    "ad_series",
    "exp_ad",
    "bernoulli",
    "f_coefficients",
    "epsilon_coefficients",
    "exp_coefficients",
    "xi_coefficients",
    "series_product",
    "dynkin_project",
    "is_lie",
    "KINDS",
]

KINDS = ("bernoulli", "f", "epsilon", "xi", "exp")


@dataclass(frozen=True)
class CoefficientTable:
    kind: str
    values: tuple

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown coefficient kind {self.kind!r}")
        object.__setattr__(self, "values", tuple(Q(v) for v in self.values))

    def __getitem__(self, n):
        return self.values[n]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    @property
    def order(self) -> int:
        return len(self.values) - 1


def bernoulli(K: int) -> CoefficientTable:
    """``B_0 .. B_K`` from ``sum_{j<=m} C(m+1, j) B_j = 0``, ``B_0 = 1``."""
    if K < 0:
        raise ValueError("K must be non-negative")
    B = [ONE]
    for m in range(1, K + 1):
        s = sum((comb(m + 1, j) * B[j] for j in range(m)), ZERO)
        B.append(-s / (m + 1))
    return CoefficientTable("bernoulli", B)


def f_coefficients(K: int) -> CoefficientTable:
    B = bernoulli(K)
    return CoefficientTable(
        "f", [(-1) ** n * B[n] / factorial(n + 1) for n in range(K + 1)]
    )


def epsilon_coefficients(K: int) -> CoefficientTable:
    if K < 0:
        raise ValueError("K must be non-negative")
    return CoefficientTable("epsilon", [mpq(1, factorial(n + 1)) for n in range(K + 1)])


def exp_coefficients(K: int) -> CoefficientTable:
    if K < 0:
        raise ValueError("K must be non-negative")
    return CoefficientTable("exp", [mpq(1, factorial(n)) for n in range(K + 1)])


def xi_coefficients(K: int) -> CoefficientTable:
    """Coefficients ``A_n`` of ``1/f`` by the usual inversion recursion."""
    f = f_coefficients(K)
    A = [ONE]
    for n in range(1, K + 1):
        A.append(-sum((A[n - l] * f[l] for l in range(1, n + 1)), ZERO))
    return CoefficientTable("xi", A)


def series_product(a: Sequence, b: Sequence, K: int | None = None) -> list:
    """Cauchy product of two coefficient lists, cut at degree ``K``."""
    if K is None:
        K = len(a) + len(b) - 2
    out = []
    for n in range(K + 1):
        s = ZERO
        for i in range(n + 1):
            if i < len(a) and n - i < len(b):
                s += Q(a[i]) * Q(b[n - i])
        out.append(s)
    return out


_TABLES = {
    "bernoulli": bernoulli,
    "f": f_coefficients,
    "epsilon": epsilon_coefficients,
    "xi": xi_coefficients,
    "exp": exp_coefficients,
}


def table(kind: str, K: int) -> CoefficientTable:
    try:
        return _TABLES[kind](K)
    except KeyError:
        raise ValueError(f"unknown coefficient kind {kind!r}") from None


# ---------------------------------------------------------------------------
# exp / log


def exp(x: Element) -> Element:
    """``sum_{m<=N} x^m/m!`` for a degree-0 element without scalar part."""
    if x.scalar:
        raise AlgebraError("exp needs an element with zero scalar part")
    if not x.is_homogeneous(0):
        raise AlgebraError("exp is only defined here for degree-0 elements")
    ctx = x.context
    N = ctx.truncation
    acc = {(): ONE}
    power = {(): ONE}
    for m in range(1, N + 1):
        power = _mul(power, x._terms, N)
        if not power:
            break
        _add_into(acc, power, mpq(1, factorial(m)))
    return Element._raw(ctx, _clean(acc))


def log(x: Element) -> Element:
    """``sum_{m<=N} (-1)^{m+1} (x-1)^m / m`` for an element with scalar part 1."""
    if x.scalar != 1:
        raise AlgebraError("log needs an element with scalar part 1")
    ctx = x.context
    N = ctx.truncation
    y = {w: c for w, c in x._terms.items() if w}
    acc: dict = {}
    power = {(): ONE}
    for m in range(1, N + 1):
        power = _mul(power, y, N)
        if not power:
            break
        _add_into(acc, power, mpq((-1) ** (m + 1), m))
    return Element._raw(ctx, _clean(acc))


# ---------------------------------------------------------------------------
# adjoint series


def ad_apply(x: Element, y: Element) -> Element:
    return bracket(x, y)


def ad_power(x: Element, y: Element, n: int) -> Element:
    for _ in range(n):
        if not y:
            break
        y = bracket(x, y)
    return y


def ad_series(coeffs, x: Element, y: Element) -> Element:
    """``sum_n c_n ad_x^n(y)``; terminates because ``ad_x`` raises word length."""
    x._check(y)
    if x.scalar:
        raise AlgebraError("ad_series needs an element with zero scalar part")
    ctx = x.context
    N = ctx.truncation
    degs = ctx.degrees
    coeffs = list(coeffs.values if isinstance(coeffs, CoefficientTable) else coeffs)
    cur = y._terms
    acc: dict = {}
    for n, c in enumerate(coeffs):
        if not cur:
            break
        c = Q(c)
        if c:
            _add_into(acc, cur, c)
        if n + 1 < len(coeffs):
            cur = _bracket(x._terms, cur, degs, N)
    else:
        if cur and _bracket(x._terms, cur, degs, N):
            raise AlgebraError(
                f"coefficient table of length {len(coeffs)} too short for truncation {N}"
            )
    return Element._raw(ctx, _clean(acc))


def exp_ad(x: Element, y: Element) -> Element:
    """``e^{ad_x}(y)``."""
    return ad_series(exp_coefficients(x.context.truncation), x, y)


# ---------------------------------------------------------------------------
# Dynkin projection


def _left_bracketing(word: tuple, degs: tuple, N: int) -> dict:
    out = {word[-1:]: ONE}
    for g in reversed(word[:-1]):
        out = _bracket({(g,): ONE}, out, degs, N)
        if not out:
            break
    return out


def dynkin_project(x: Element) -> Element:
    """Send each length-n word ``g1...gn`` to ``(1/n)[g1,[g2,...,[g_{n-1},gn]...]]``."""
    if x.scalar:
        raise AlgebraError("dynkin_project needs zero scalar part")
    ctx = x.context
    N = ctx.truncation
    acc: dict = {}
    for w, c in x._terms.items():
        _add_into(acc, _left_bracketing(w, ctx.degrees, N), c / len(w))
    return Element._raw(ctx, _clean(acc))


def is_lie(x: Element) -> bool:
    return dynkin_project(x) == x
