"""Truncated tensor algebras over graded alphabets.

Elements of a completed free graded Lie algebra are stored expanded in the
ambient tensor algebra: a sparse map from words (tuples of generator indices)
to exact rationals.  Every context fixes a truncation order ``N``; words longer
than ``N`` are dropped by every operation, which is exact modulo the
word-length filtration because nothing here ever lowers word length.

Sign conventions: ``|[x, y]| = |x| + |y|`` and
``[x, y] = xy - (-1)^{|x||y|} yx`` on homogeneous pieces.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .rational import ONE, ZERO, Q, mpq

__all__ = [
    "AlgebraError",
    "ContextMismatch",
    "Generator",
    "AlgebraContext",
    "Element",
    "Morphism",
    "ChainMapDefect",
    "make_context",
    "bracket",
    "concat_product",
    "component",
    "apply_morphism",
    "validate_chain_morphism",
    "lie_monomial",
]

Word = tuple  # tuple[int, ...]; the empty word carries the scalar part

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class AlgebraError(ValueError):
    pass


class ContextMismatch(AlgebraError):
    pass


@dataclass(frozen=True)
class Generator:
    name: str
    degree: int

    def __post_init__(self):
        if not isinstance(self.name, str) or not _NAME_RE.match(self.name):
            raise AlgebraError(f"invalid generator name {self.name!r}")
        if isinstance(self.degree, bool) or not isinstance(self.degree, int):
            raise AlgebraError(f"degree of {self.name} must be an integer")


@dataclass(frozen=True)
class AlgebraContext:
    """An ordered graded alphabet together with the truncation order ``N``."""

    generators: tuple
    truncation: int
    _index: Mapping = field(init=False, repr=False, compare=False, hash=False)
    degrees: tuple = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        gens = tuple(
            g if isinstance(g, Generator) else Generator(*g) for g in self.generators
        )
        if not gens:
            raise AlgebraError("a context needs at least one generator")
        if isinstance(self.truncation, bool) or not isinstance(self.truncation, int):
            raise AlgebraError("truncation must be an integer")
        if self.truncation < 1:
            raise AlgebraError(f"truncation must be >= 1, got {self.truncation}")
        index = {}
        for i, g in enumerate(gens):
            if g.name in index:
                raise AlgebraError(f"duplicate generator name {g.name!r}")
            index[g.name] = i
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_index", index)
        object.__setattr__(self, "degrees", tuple(g.degree for g in gens))

    @property
    def N(self) -> int:
        return self.truncation

    @property
    def names(self) -> tuple:
        return tuple(g.name for g in self.generators)

    def __len__(self):
        return len(self.generators)

    def __contains__(self, name):
        return name in self._index

    def index(self, name) -> int:
        if isinstance(name, Generator):
            name = name.name
        if isinstance(name, int) and not isinstance(name, bool):
            if 0 <= name < len(self.generators):
                return name
            raise AlgebraError(f"generator index {name} out of range")
        try:
            return self._index[name]
        except KeyError:
            raise AlgebraError(f"unknown generator {name!r}") from None

    def degree_of(self, name) -> int:
        return self.degrees[self.index(name)]

    def word_degree(self, word: Word) -> int:
        degs = self.degrees
        return sum(degs[i] for i in word)

    def word_names(self, word: Word) -> tuple:
        return tuple(self.generators[i].name for i in word)

    def gen(self, name) -> "Element":
        return Element._raw(self, {(self.index(name),): ONE})

    def __getitem__(self, name) -> "Element":
        return self.gen(name)

    def zero(self) -> "Element":
        return Element._raw(self, {})

    def one(self) -> "Element":
        return Element._raw(self, {(): ONE})

    def scalar(self, c) -> "Element":
        c = Q(c)
        return Element._raw(self, {(): c} if c else {})

    def element(self, terms: Iterable = (), scalar=0) -> "Element":
        """Build an element from ``(word, coefficient)`` pairs; words may use names."""
        acc: dict = {}
        for word, coef in terms:
            w = tuple(self.index(g) for g in word)
            if not w:
                raise AlgebraError("use the scalar argument for the unit part")
            acc[w] = acc.get(w, ZERO) + Q(coef)
        s = Q(scalar)
        if s:
            acc[()] = s
        return Element(self, acc)

    def with_truncation(self, truncation: int) -> "AlgebraContext":
        return AlgebraContext(self.generators, truncation)


def make_context(generators, truncation: int) -> AlgebraContext:
    """Create an immutable context from ``(name, degree)`` pairs."""
    return AlgebraContext(tuple(Generator(n, d) for n, d in generators), truncation)


# ---------------------------------------------------------------------------
# dict kernels; words longer than N never enter a result


def _add_into(acc: dict, terms: Mapping, factor=ONE) -> None:
    get = acc.get
    if factor == 1:
        for w, c in terms.items():
            acc[w] = get(w, ZERO) + c
    else:
        for w, c in terms.items():
            acc[w] = get(w, ZERO) + factor * c


def _clean(acc: dict) -> dict:
    return {w: c for w, c in acc.items() if c}


def _by_length(terms: Mapping) -> list:
    buckets: dict = {}
    for w, c in terms.items():
        buckets.setdefault(len(w), []).append((w, c))
    return sorted(buckets.items())


def _mul(xt: Mapping, yt: Mapping, N: int) -> dict:
    if not xt or not yt:
        return {}
    ybuckets = _by_length(yt)
    out: dict = {}
    get = out.get
    for wx, cx in xt.items():
        rem = N - len(wx)
        for ly, items in ybuckets:
            if ly > rem:
                break
            for wy, cy in items:
                k = wx + wy
                out[k] = get(k, ZERO) + cx * cy
    return _clean(out)


def _bracket(xt: Mapping, yt: Mapping, degs: tuple, N: int) -> dict:
    if not xt or not yt:
        return {}
    ybuckets = [
        (ly, [(wy, cy, sum(degs[i] for i in wy) & 1) for wy, cy in items])
        for ly, items in _by_length(yt)
    ]
    out: dict = {}
    get = out.get
    for wx, cx in xt.items():
        rem = N - len(wx)
        px = sum(degs[i] for i in wx) & 1
        for ly, items in ybuckets:
            if ly > rem:
                break
            for wy, cy, py in items:
                c = cx * cy
                k1 = wx + wy
                k2 = wy + wx
                out[k1] = get(k1, ZERO) + c
                if px and py:
                    out[k2] = get(k2, ZERO) + c
                else:
                    out[k2] = get(k2, ZERO) - c
    return _clean(out)


class Element:
    """An exact, immutable element of a truncated graded tensor algebra."""

    __slots__ = ("context", "_terms", "_hash")

    def __init__(self, context: AlgebraContext, terms: Mapping | None = None):
        if not isinstance(context, AlgebraContext):
            raise TypeError("context must be an AlgebraContext")
        n_gen = len(context.generators)
        N = context.truncation
        acc: dict = {}
        for w, c in (terms or {}).items():
            w = tuple(w)
            if len(w) > N:
                continue
            for i in w:
                if isinstance(i, bool) or not isinstance(i, int) or not 0 <= i < n_gen:
                    raise AlgebraError(f"word {w!r} has an invalid letter")
            c = Q(c)
            if c:
                acc[w] = acc.get(w, ZERO) + c
        self.context = context
        self._terms = _clean(acc)
        self._hash = None

    @classmethod
    def _raw(cls, context: AlgebraContext, terms: dict) -> "Element":
        # trusted constructor: terms already clean, truncated and owned
        obj = object.__new__(cls)
        obj.context = context
        obj._terms = terms
        obj._hash = None
        return obj

    # -- inspection -------------------------------------------------------

    @property
    def scalar(self) -> mpq:
        return self._terms.get((), ZERO)

    @property
    def N(self) -> int:
        return self.context.truncation

    def terms(self) -> list:
        """``(word, coefficient)`` pairs in canonical length-lexicographic order.

        The scalar part is not included; see :attr:`scalar`.
        """
        return sorted(
            ((w, c) for w, c in self._terms.items() if w), key=lambda t: (len(t[0]), t[0])
        )

    def coefficient(self, word) -> mpq:
        w = tuple(self.context.index(g) for g in word)
        return self._terms.get(w, ZERO)

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degrees(self) -> set:
        degs = self.context.degrees
        return {sum(degs[i] for i in w) for w in self._terms}

    def degree(self):
        """The degree of a homogeneous element; ``None`` for zero."""
        ds = self.degrees()
        if not ds:
            return None
        if len(ds) > 1:
            raise AlgebraError(f"element is not homogeneous (degrees {sorted(ds)})")
        return ds.pop()

    def is_homogeneous(self, degree: int) -> bool:
        return all(d == degree for d in self.degrees())

    def lengths(self) -> set:
        return {len(w) for w in self._terms}

    def min_length(self):
        return min((len(w) for w in self._terms), default=None)

    def letters(self) -> set:
        return {i for w in self._terms for i in w}

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "Element") -> None:
        if self.context is not other.context and self.context != other.context:
            raise ContextMismatch("elements live in different contexts")

    def _coerce(self, other):
        if isinstance(other, Element):
            self._check(other)
            return other
        return self.context.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        acc = dict(self._terms)
        _add_into(acc, other._terms)
        return Element._raw(self.context, _clean(acc))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        acc = dict(self._terms)
        _add_into(acc, other._terms, -ONE)
        return Element._raw(self.context, _clean(acc))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __neg__(self):
        return Element._raw(self.context, {w: -c for w, c in self._terms.items()})

    def scale(self, factor) -> "Element":
        f = Q(factor)
        if not f:
            return self.context.zero()
        return Element._raw(self.context, {w: f * c for w, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, Element):
            return concat_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Element):
            return concat_product(other, self)
        return self.scale(other)

    def __truediv__(self, other):
        return self.scale(ONE / Q(other))

    # -- equality ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Element):
            return self.context == other.context and self._terms == other._terms
        if isinstance(other, (int, mpq)) and not isinstance(other, bool):
            c = Q(other)
            return self._terms == ({(): c} if c else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.context, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        from .frontend.formatting import format_element

        return f"Element({format_element(self)})"

    def __str__(self):
        from .frontend.formatting import format_element

        return format_element(self)

    # -- convenience --------------------------------------------------------

    def bracket(self, other: "Element") -> "Element":
        return bracket(self, other)

    def truncate(self, length: int) -> "Element":
        """Drop every word longer than ``length`` (the context is unchanged)."""
        return Element._raw(
            self.context, {w: c for w, c in self._terms.items() if len(w) <= length}
        )

    def map_letters(self, context: AlgebraContext, letter_map) -> "Element":
        """Relabel letters through an injective index map (no signs involved)."""
        return Element(
            context, {tuple(letter_map[i] for i in w): c for w, c in self._terms.items()}
        )


def bracket(x: Element, y: Element) -> Element:
    """Graded commutator, extended bilinearly over homogeneous word pairs."""
    x._check(y)
    ctx = x.context
    return Element._raw(ctx, _bracket(x._terms, y._terms, ctx.degrees, ctx.truncation))


def concat_product(x: Element, y: Element) -> Element:
    x._check(y)
    ctx = x.context
    return Element._raw(ctx, _mul(x._terms, y._terms, ctx.truncation))


def component(x: Element, word_length: int) -> Element:
    """The part of ``x`` made of words of exactly ``word_length`` letters."""
    N = x.context.truncation
    if isinstance(word_length, bool) or not isinstance(word_length, int):
        raise AlgebraError("word length must be an integer")
    if not 1 <= word_length <= N:
        raise AlgebraError(f"word length {word_length} outside [1, {N}]")
    return Element._raw(
        x.context, {w: c for w, c in x._terms.items() if len(w) == word_length}
    )


def lie_monomial(context: AlgebraContext, names) -> Element:
    """Right-nested bracket ``[g1, [g2, ..., [g_{n-1}, g_n]...]]``."""
    names = list(names)
    if not names:
        raise AlgebraError("empty bracket")
    out = context.gen(names[-1])
    for g in reversed(names[:-1]):
        out = bracket(context.gen(g), out)
    return out


# ---------------------------------------------------------------------------
# morphisms


class Morphism:
    """Algebra morphism determined by generator images.

    Images must be homogeneous of the generator's degree, have no scalar part
    and no words of length zero; the map then never lowers word length, so
    applying it modulo ``N`` is exact.
    """

    __slots__ = ("source", "target", "_images", "_image_terms")

    def __init__(self, source: AlgebraContext, target: AlgebraContext, images: Mapping):
        if source.truncation < target.truncation:
            raise ContextMismatch(
                "source truncation is lower than target truncation; results would be inexact"
            )
        table = [None] * len(source.generators)
        for key, img in images.items():
            i = source.index(key)
            if not isinstance(img, Element):
                raise TypeError(f"image of {source.generators[i].name} is not an Element")
            if img.context != target:
                raise ContextMismatch(
                    f"image of {source.generators[i].name} is not in the target context"
                )
            if table[i] is not None:
                raise AlgebraError(f"image of {source.generators[i].name} given twice")
            table[i] = img
        missing = [source.generators[i].name for i, v in enumerate(table) if v is None]
        if missing:
            raise AlgebraError(f"no image for generators {missing}")
        for g, img in zip(source.generators, table):
            if img.scalar:
                raise AlgebraError(f"image of {g.name} has a scalar part")
            if not img.is_homogeneous(g.degree):
                raise AlgebraError(
                    f"image of {g.name} is not homogeneous of degree {g.degree}"
                )
        self.source = source
        self.target = target
        self._images = tuple(table)
        self._image_terms = tuple(
            sorted(img._terms.items(), key=lambda t: len(t[0])) for img in table
        )

    @property
    def images(self) -> dict:
        return {g.name: img for g, img in zip(self.source.generators, self._images)}

    def image(self, name) -> Element:
        return self._images[self.source.index(name)]

    def __call__(self, x: Element) -> Element:
        return apply_morphism(self, x)

    def compose(self, inner: "Morphism") -> "Morphism":
        """``self ∘ inner``."""
        if inner.target != self.source:
            raise ContextMismatch("morphisms are not composable")
        return Morphism(
            inner.source,
            self.target,
            {g.name: self(img) for g, img in zip(inner.source.generators, inner._images)},
        )


def _substitute(image_terms: tuple, xt: Mapping, N: int) -> dict:
    # Horner evaluation over the prefix tree of the words of x.
    def rec(entries, pos, budget):
        out: dict = {}
        groups: dict = {}
        for w, c in entries:
            if len(w) == pos:
                out[()] = out.get((), ZERO) + c
            else:
                groups.setdefault(w[pos], []).append((w, c))
        for g, sub in groups.items():
            img = image_terms[g]
            if not img:
                continue
            ml = len(img[0][0])
            if ml > budget:
                continue
            head = {w: c for w, c in img if len(w) <= budget}
            tail = rec(sub, pos + 1, budget - ml)
            if tail:
                _add_into(out, _mul(head, tail, budget))
        return _clean(out)

    return rec(list(xt.items()), 0, N)


def apply_morphism(m: Morphism, x: Element) -> Element:
    if x.context != m.source:
        raise ContextMismatch("element is not in the morphism's source")
    return Element._raw(m.target, _substitute(m._image_terms, x._terms, m.target.truncation))


@dataclass(frozen=True)
class ChainMapDefect:
    generator: str
    lowest_length: int
    difference: Element


def validate_chain_morphism(m: Morphism, d_src, d_tgt) -> list:
    """Generators where ``m ∘ d_src`` and ``d_tgt ∘ m`` disagree modulo N.

    An empty list means ``m`` is a chain map.
    """
    defects = []
    for g in m.source.generators:
        x = m.source.gen(g.name)
        diff = m(d_src.apply(x)) - d_tgt.apply(m(x))
        if diff:
            defects.append(ChainMapDefect(g.name, diff.min_length(), diff))
    return defects
