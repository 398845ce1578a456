"""Graded derivations, differentials and the contractible algebras 𝓛⁽ᵏ⁾.

A degree-``k`` derivation is fixed by its generator images and extended by

    D(xy) = D(x) y + (-1)^{k|x|} x D(y).

Perturbing a differential ``d`` by a Maurer-Cartan element ``a`` gives
``d_a = d + [a, -]``; with the conventions above this is the orientation for
which ``d_a`` squares to zero (``(d + ad_a)^2 = ad_{da + [a,a]/2}``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping

from .algebra import (
    AlgebraContext,
    AlgebraError,
    ContextMismatch,
    Element,
    _add_into,
    _clean,
    bracket,
    component,
    make_context,
)
from .linalg import RowReducer
from .rational import ONE, ZERO, mpq
from .series import dynkin_project

__all__ = [
    "Derivation",
    "DGLPresentation",
    "ContractibleAlgebra",
    "make_derivation",
    "apply_derivation",
    "theta_tilde",
    "check_mc",
    "perturbed_differential",
    "contractible_algebra",
    "exactness_report",
    "ExactnessReport",
    "HomologyBlock",
    "square_defects",
]


def _derive(image_terms: tuple, degs: tuple, k: int, xt: Mapping, N: int) -> dict:
    out: dict = {}
    get = out.get
    odd = k & 1
    for w, c in xt.items():
        budget = N - len(w) + 1
        s = 0
        for i, g in enumerate(w):
            img = image_terms[g]
            if img:
                cc = -c if (odd and s & 1) else c
                pre = w[:i]
                post = w[i + 1 :]
                for wi, ci in img:
                    if len(wi) > budget:
                        break
                    key = pre + wi + post
                    out[key] = get(key, ZERO) + cc * ci
            s += degs[g]
    return _clean(out)


class Derivation:
    """A graded derivation of a truncated tensor algebra, fixed by generator images."""

    __slots__ = ("context", "degree", "_images", "_image_terms")

    def __init__(self, context: AlgebraContext, degree: int, images: Mapping):
        table = [None] * len(context.generators)
        for key, img in images.items():
            i = context.index(key)
            if not isinstance(img, Element):
                raise TypeError("derivation images must be Elements")
            if img.context != context:
                raise ContextMismatch(f"image of {context.generators[i].name} in another context")
            table[i] = img
        for i, g in enumerate(context.generators):
            img = table[i]
            if img is None:
                table[i] = img = context.zero()
            if img.scalar:
                raise AlgebraError(f"image of {g.name} has a scalar part")
            if not img.is_homogeneous(g.degree + degree):
                raise AlgebraError(
                    f"image of {g.name} must have degree {g.degree + degree}, "
                    f"found {sorted(img.degrees())}"
                )
        self.context = context
        self.degree = degree
        self._images = tuple(table)
        self._image_terms = tuple(
            tuple(sorted(img._terms.items(), key=lambda t: len(t[0]))) for img in table
        )

    @property
    def images(self) -> dict:
        return {g.name: img for g, img in zip(self.context.generators, self._images)}

    def image(self, name) -> Element:
        return self._images[self.context.index(name)]

    def apply(self, x: Element) -> Element:
        if x.context != self.context:
            raise ContextMismatch("element is not in the derivation's context")
        ctx = self.context
        return Element._raw(
            ctx, _derive(self._image_terms, ctx.degrees, self.degree, x._terms, ctx.truncation)
        )

    __call__ = apply

    def is_length_preserving(self) -> bool:
        return all(img.lengths() <= {1} for img in self._images)

    def __add__(self, other: "Derivation") -> "Derivation":
        if other.context != self.context or other.degree != self.degree:
            raise AlgebraError("can only add derivations of equal degree on one context")
        return Derivation(
            self.context,
            self.degree,
            {g.name: a + b for g, a, b in zip(self.context.generators, self._images, other._images)},
        )

    def __eq__(self, other):
        if not isinstance(other, Derivation):
            return NotImplemented
        return (
            self.context == other.context
            and self.degree == other.degree
            and self._images == other._images
        )

    def __hash__(self):
        return hash((self.context, self.degree, self._images))

    def __repr__(self):
        return f"Derivation(degree={self.degree}, {len(self._images)} generators)"


def make_derivation(context: AlgebraContext, degree: int, images: Mapping) -> Derivation:
    return Derivation(context, degree, images)


def apply_derivation(D: Derivation, x: Element) -> Element:
    return D.apply(x)


def square_defects(d: Derivation) -> dict:
    """Generators ``g`` with ``d(d(g)) != 0`` modulo N, mapped to ``d(d(g))``."""
    out = {}
    for g in d.context.generators:
        dd = d.apply(d.image(g.name))
        if dd:
            out[g.name] = dd
    return out


@dataclass(frozen=True)
class DGLPresentation:
    context: AlgebraContext
    differential: Derivation
    validate: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.differential.context != self.context:
            raise ContextMismatch("differential lives on another context")
        if self.differential.degree != -1:
            raise AlgebraError("a differential has degree -1")
        if self.validate:
            bad = square_defects(self.differential)
            if bad:
                raise AlgebraError(f"d^2 != 0 on generators {sorted(bad)}")

    @property
    def d(self) -> Derivation:
        return self.differential


# ---------------------------------------------------------------------------
# 𝓛⁽ᵏ⁾ and the section θ̃


@dataclass(frozen=True)
class ContractibleAlgebra:
    """𝓛⁽ᵏ⁾: free on u_i (degree 1) and v_i = d u_i (degree 0), with θ(v_i) = u_i."""

    k: int
    context: AlgebraContext
    d: Derivation
    theta: Derivation

    @property
    def presentation(self) -> DGLPresentation:
        return DGLPresentation(self.context, self.d, validate=False)

    def u(self, i: int) -> Element:
        return self.context.gen(f"u{i}")

    def v(self, i: int) -> Element:
        return self.context.gen(f"v{i}")


@lru_cache(maxsize=None)
def contractible_algebra(k: int, truncation: int) -> ContractibleAlgebra:
    if k < 1:
        raise AlgebraError("k must be at least 1")
    ctx = make_context(
        [(f"u{i}", 1) for i in range(1, k + 1)] + [(f"v{i}", 0) for i in range(1, k + 1)],
        truncation,
    )
    d = Derivation(ctx, -1, {f"u{i}": ctx.gen(f"v{i}") for i in range(1, k + 1)})
    theta = Derivation(ctx, 1, {f"v{i}": ctx.gen(f"u{i}") for i in range(1, k + 1)})
    return ContractibleAlgebra(k, ctx, d, theta)


def theta_tilde(x: Element, theta: Derivation) -> Element:
    """Apply θ to each word-length component and divide by the length."""
    if x.scalar:
        raise AlgebraError("theta_tilde needs zero scalar part")
    if not x.is_homogeneous(0):
        raise AlgebraError("theta_tilde is defined on degree-0 elements")
    ctx = x.context
    acc: dict = {}
    for n in sorted(x.lengths()):
        part = component(x, n)
        _add_into(acc, theta.apply(part)._terms, mpq(1, n))
    return Element._raw(ctx, _clean(acc))


# ---------------------------------------------------------------------------
# Maurer-Cartan elements


def check_mc(d: Derivation, a: Element) -> bool:
    """True iff ``d(a) + [a, a]/2 = 0`` modulo N."""
    if not a.is_homogeneous(-1):
        raise AlgebraError("Maurer-Cartan elements have degree -1")
    return not (d.apply(a) + bracket(a, a).scale(mpq(1, 2)))


def perturbed_differential(d: Derivation, a: Element) -> Derivation:
    """``d_a = d + [a, -]`` for a Maurer-Cartan element ``a``."""
    if not check_mc(d, a):
        raise AlgebraError("perturbing element is not Maurer-Cartan")
    ctx = d.context
    return Derivation(
        ctx,
        d.degree,
        {g.name: img + bracket(a, ctx.gen(g.name)) for g, img in zip(ctx.generators, d._images)},
    )


# ---------------------------------------------------------------------------
# exactness per (word length, degree) block


@dataclass(frozen=True)
class HomologyBlock:
    length: int
    degree: int
    dimension: int
    rank_out: int  # rank of d leaving this block
    rank_in: int  # rank of d entering this block

    @property
    def homology(self) -> int:
        return self.dimension - self.rank_out - self.rank_in


@dataclass(frozen=True)
class ExactnessReport:
    space: str
    max_length: int
    blocks: tuple

    @property
    def nonzero(self) -> list:
        return [b for b in self.blocks if b.homology]

    @property
    def exact(self) -> bool:
        return not self.nonzero


def _words(context: AlgebraContext, length: int):
    return itertools.product(range(len(context.generators)), repeat=length)


def _block_basis(context, length, degree, space):
    degs = context.degrees
    words = [w for w in _words(context, length) if sum(degs[i] for i in w) == degree]
    if space == "tensor":
        return [Element._raw(context, {w: ONE}) for w in words]
    red = RowReducer()
    basis = []
    for w in words:
        p = dynkin_project(Element._raw(context, {w: ONE}))
        if p and red.add(dict(p._terms)):
            basis.append(p)
    return basis


def exactness_report(
    presentation: DGLPresentation, max_length: int, space: str = "lie"
) -> ExactnessReport:
    """Homology of each (word length, degree) block, by exact ranks over Q.

    ``space="lie"`` works inside the free Lie algebra (spanned by Dynkin
    projections of words); ``space="tensor"`` uses all words.
    """
    if space not in ("lie", "tensor"):
        raise ValueError("space must be 'lie' or 'tensor'")
    d = presentation.differential
    ctx = presentation.context
    if not d.is_length_preserving():
        raise AlgebraError("differential does not preserve word length")
    if max_length > ctx.truncation:
        raise AlgebraError("max_length exceeds the truncation")
    degs = ctx.degrees
    blocks = []
    for length in range(1, max_length + 1):
        lo, hi = length * min(degs), length * max(degs)
        bases = {q: _block_basis(ctx, length, q, space) for q in range(lo, hi + 1)}
        ranks = {}
        for q, basis in bases.items():
            red = RowReducer()
            for b in basis:
                red.add(dict(d.apply(b)._terms))
            ranks[q] = red.rank
        for q in range(lo, hi + 1):
            dim = len(bases[q])
            if not dim:
                continue
            blocks.append(HomologyBlock(length, q, dim, ranks[q], ranks.get(q + 1, 0)))
    return ExactnessReport(space, max_length, tuple(blocks))
