"""Degree-2 correctors for conjugation in (L_1, •), and products with cycles.

With ``a = dα`` and ``b = dβ``:

    α • β • α⁻¹ = e^{ad_a}(β) - dσ(α, β) = e^{ad_a}(β) • (dτ(α, β))⁻¹

where ``σ(α, β) = Σ_{i,j≥0} ad_a^i ad_α ad_a^j(β) / (i+j+2)!`` and
``τ(α, β) = ξ(ad_c)(σ(α, β))`` with ``c = a * b * a⁻¹ = e^{ad_a}(b)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import AlgebraError, Element, _add_into, _bracket, _clean
from .differential import Derivation
from .rational import mpq, factorial
from .series import (
    ad_series,
    bernoulli,
    exp_ad,
    f_coefficients,
    xi_coefficients,
)

__all__ = [
    "CorrectorPair",
    "sigma",
    "tau",
    "correctors",
    "bullet_cycle_right",
    "bullet_cycle_left",
    "solve_translation",
]


def _check_pair(d: Derivation, alpha: Element, beta: Element) -> None:
    for name, x in (("α", alpha), ("β", beta)):
        if x.context != d.context:
            raise AlgebraError(f"{name} is not in the differential's context")
        if x.scalar or not x.is_homogeneous(1):
            raise AlgebraError(f"{name} must have degree 1")


def sigma(d: Derivation, alpha: Element, beta: Element) -> Element:
    _check_pair(d, alpha, beta)
    ctx = d.context
    N = ctx.truncation
    degs = ctx.degrees
    a = d.apply(alpha)._terms
    al = alpha._terms
    acc: dict = {}
    right = beta._terms  # ad_a^j(β)
    j = 0
    while right:
        inner = _bracket(al, right, degs, N)  # ad_α ad_a^j(β)
        i = 0
        while inner:
            _add_into(acc, inner, mpq(1, factorial(i + j + 2)))
            inner = _bracket(a, inner, degs, N)
            i += 1
        right = _bracket(a, right, degs, N)
        j += 1
    return Element._raw(ctx, _clean(acc))


def tau(d: Derivation, alpha: Element, beta: Element) -> Element:
    _check_pair(d, alpha, beta)
    N = d.context.truncation
    a = d.apply(alpha)
    b = d.apply(beta)
    c = exp_ad(a, b)
    return ad_series(xi_coefficients(N), c, sigma(d, alpha, beta))


@dataclass(frozen=True)
class CorrectorPair:
    alpha: Element
    beta: Element
    a: Element
    b: Element
    sigma: Element
    tau: Element


def correctors(d: Derivation, alpha: Element, beta: Element) -> CorrectorPair:
    s = sigma(d, alpha, beta)
    a = d.apply(alpha)
    b = d.apply(beta)
    t = ad_series(xi_coefficients(d.context.truncation), exp_ad(a, b), s)
    return CorrectorPair(alpha, beta, a, b, s, t)


def _require_cycle(d: Derivation, x: Element, name: str) -> None:
    if d.apply(x):
        raise AlgebraError(f"{name} is not a cycle")


def bullet_cycle_right(d: Derivation, alpha: Element, beta: Element) -> Element:
    """``α • β = α + Σ (-1)^n B_n/(n+1)! ad_a^n(β)`` when ``dβ = 0``."""
    _check_pair(d, alpha, beta)
    _require_cycle(d, beta, "β")
    N = d.context.truncation
    return alpha + ad_series(f_coefficients(N), d.apply(alpha), beta)


def bullet_cycle_left(d: Derivation, alpha: Element, beta: Element) -> Element:
    """``α • β = β + Σ B_n/(n+1)! ad_b^n(α)`` when ``dα = 0``."""
    _check_pair(d, alpha, beta)
    _require_cycle(d, alpha, "α")
    N = d.context.truncation
    B = bernoulli(N)
    coeffs = [B[n] / factorial(n + 1) for n in range(N + 1)]
    return beta + ad_series(coeffs, d.apply(beta), alpha)


def solve_translation(d: Derivation, alpha: Element, gamma: Element) -> Element:
    """The cycle ``β = ξ(ad_a)(γ)``, for which ``α • β = α + γ``."""
    _check_pair(d, alpha, gamma)
    _require_cycle(d, gamma, "γ")
    return ad_series(xi_coefficients(d.context.truncation), d.apply(alpha), gamma)

