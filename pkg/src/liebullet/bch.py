"""The BCH product on degree 0 and the bullet product on degree 1.

``x * y = log(e^x e^y)`` on degree-0 elements.  For degree-1 elements the
bullet product is transported from the universal example: in 𝓛⁽²⁾ put
``u1 • u2 = θ̃(v1 * v2)`` and send ``u1, u2, v1, v2`` to ``α, β, dα, dβ``.
Both products have ``0`` as unit and ``-x`` as inverse.
"""

from __future__ import annotations

from functools import lru_cache, reduce

from .algebra import AlgebraError, Element, Morphism, concat_product
from .differential import Derivation, contractible_algebra, theta_tilde
from .series import exp, exp_ad, log

__all__ = [
    "bch",
    "bch_many",
    "conjugate_by_exp",
    "bullet_universal",
    "bullet",
    "bullet_many",
    "universal_morphism",
]


def _check_degree0(x: Element) -> None:
    if x.scalar:
        raise AlgebraError("BCH arguments must have zero scalar part")
    if not x.is_homogeneous(0):
        raise AlgebraError("BCH arguments must have degree 0")


def bch(x: Element, y: Element) -> Element:
    _check_degree0(x)
    _check_degree0(y)
    return log(concat_product(exp(x), exp(y)))


def bch_many(*xs: Element) -> Element:
    """``x1 * x2 * ... * xk`` as ``log(e^{x1} ... e^{xk})``."""
    if not xs:
        raise AlgebraError("bch_many needs at least one argument")
    for x in xs:
        _check_degree0(x)
    return log(reduce(concat_product, (exp(x) for x in xs)))


def conjugate_by_exp(x: Element, y: Element) -> Element:
    """``e^{ad_x}(y)``, which equals ``x * y * x^{-1}`` for degree-0 ``y``."""
    _check_degree0(x)
    return exp_ad(x, y)


@lru_cache(maxsize=None)
def bullet_universal(k: int, N: int) -> Element:
    """``θ̃(v1 * ... * vk)`` in 𝓛⁽ᵏ⁾ truncated at ``N``."""
    if k < 2:
        raise AlgebraError("the universal bullet product needs k >= 2")
    A = contractible_algebra(k, N)
    prod = bch_many(*(A.v(i) for i in range(1, k + 1)))
    return theta_tilde(prod, A.theta)


def universal_morphism(d: Derivation, elements) -> Morphism:
    """The morphism 𝓛⁽ᵏ⁾ → L with ``u_i ↦ α_i`` and ``v_i ↦ d α_i``."""
    ctx = d.context
    A = contractible_algebra(len(elements), ctx.truncation)
    images = {}
    for i, alpha in enumerate(elements, start=1):
        if alpha.context != ctx:
            raise AlgebraError("bullet arguments must live in the differential's context")
        if alpha.scalar or not alpha.is_homogeneous(1):
            raise AlgebraError("bullet arguments must have degree 1")
        images[f"u{i}"] = alpha
        images[f"v{i}"] = d.apply(alpha)
    return Morphism(A.context, ctx, images)


def bullet(d: Derivation, alpha: Element, beta: Element) -> Element:
    if d.degree != -1:
        raise AlgebraError("bullet needs a differential of degree -1")
    m = universal_morphism(d, (alpha, beta))
    return m(bullet_universal(2, d.context.truncation))


def bullet_many(d: Derivation, elements) -> Element:
    """The k-fold product through ``θ̃(v1 * ... * vk)`` in 𝓛⁽ᵏ⁾; empty gives 0."""
    elements = list(elements)
    if not elements:
        return d.context.zero()
    if len(elements) == 1:
        universal_morphism(d, elements)  # argument validation only
        return elements[0]
    m = universal_morphism(d, elements)
    return m(bullet_universal(len(elements), d.context.truncation))
