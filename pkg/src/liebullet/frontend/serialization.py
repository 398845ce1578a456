"""JSON formats for elements and algebras.

Element document::

    {"version": 1, "generators": [{"name": "v1", "degree": 0}, ...],
     "truncation": 4, "terms": [[["v1", "v2"], "1/2"], ...]}

The scalar part, if any, is a term with an empty word.  Algebra documents
replace ``terms`` by ``differential``, a map from generator name to an
expression in words style.  Output is canonical: fixed key order, terms in
length-lexicographic order, reduced coefficients.
"""

from __future__ import annotations

import json

from ..algebra import AlgebraContext, AlgebraError, ContextMismatch, Element, make_context
from ..differential import Derivation, DGLPresentation
from ..rational import format_rational, parse_rational
from .formatting import format_terms
from .parser import parse_expression

__all__ = [
    "FORMAT_VERSION",
    "SerializationError",
    "element_to_dict",
    "element_from_dict",
    "serialize",
    "deserialize",
    "serialize_algebra",
    "deserialize_algebra",
]

FORMAT_VERSION = 1


class SerializationError(AlgebraError):
    pass


def _context_dict(ctx: AlgebraContext) -> dict:
    return {
        "version": FORMAT_VERSION,
        "generators": [{"name": g.name, "degree": g.degree} for g in ctx.generators],
        "truncation": ctx.truncation,
    }


def _read_context(doc) -> AlgebraContext:
    if not isinstance(doc, dict):
        raise SerializationError("document must be a JSON object")
    version = doc.get("version")
    if version != FORMAT_VERSION:
        raise SerializationError(f"unsupported format version {version!r}")
    try:
        gens = [(g["name"], g["degree"]) for g in doc["generators"]]
        N = doc["truncation"]
    except (KeyError, TypeError) as exc:
        raise SerializationError(f"malformed context: {exc}") from exc
    for name, degree in gens:
        if not isinstance(degree, int) or isinstance(degree, bool):
            raise SerializationError(f"degree of {name!r} must be an integer")
    if not isinstance(N, int) or isinstance(N, bool):
        raise SerializationError("truncation must be an integer")
    return make_context(gens, N)


def _check_expected(ctx: AlgebraContext, expected: AlgebraContext | None) -> AlgebraContext:
    if expected is not None and ctx != expected:
        raise ContextMismatch("document context differs from the expected context")
    return ctx


def element_to_dict(x: Element) -> dict:
    ctx = x.context
    names = ctx.names
    terms = []
    if x.scalar:
        terms.append([[], format_rational(x.scalar)])
    terms.extend([[names[i] for i in w], format_rational(c)] for w, c in x.terms())
    doc = _context_dict(ctx)
    doc["terms"] = terms
    return doc


def element_from_dict(doc, context: AlgebraContext | None = None) -> Element:
    ctx = _check_expected(_read_context(doc), context)
    raw = doc.get("terms")
    if not isinstance(raw, list):
        raise SerializationError("terms must be a list")
    acc = {}
    for entry in raw:
        if not (isinstance(entry, list) and len(entry) == 2 and isinstance(entry[0], list)):
            raise SerializationError(f"malformed term {entry!r}")
        word, coef = entry
        if not isinstance(coef, str):
            raise SerializationError(f"coefficient {coef!r} must be a \"p/q\" string")
        try:
            c = parse_rational(coef)
            key = tuple(ctx.index(n) for n in word)
        except (ValueError, KeyError) as exc:
            raise SerializationError(f"bad term {entry!r}: {exc}") from exc
        if key in acc:
            raise SerializationError(f"duplicate word {word!r}")
        if len(key) > ctx.truncation:
            raise SerializationError(f"word {word!r} longer than the truncation")
        if c == 0:
            raise SerializationError(f"zero coefficient for {word!r}")
        acc[key] = c
    return Element(ctx, acc)


def serialize(x: Element) -> str:
    return json.dumps(element_to_dict(x), ensure_ascii=False)


def deserialize(text: str, context: AlgebraContext | None = None) -> Element:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SerializationError(f"invalid JSON: {exc}") from exc
    return element_from_dict(doc, context)


def serialize_algebra(presentation: DGLPresentation) -> str:
    ctx = presentation.context
    d = presentation.differential
    def dump(v):
        return json.dumps(v, ensure_ascii=False)

    gens = ",\n  ".join(dump(g) for g in _context_dict(ctx)["generators"])
    images = ",\n  ".join(
        f"{dump(g.name)}: {dump(format_terms(d.image(g.name)))}" for g in ctx.generators
    )
    return (
        f'{{\n "version": {FORMAT_VERSION},\n "generators": [\n  {gens}\n ],\n'
        f' "truncation": {ctx.truncation},\n "differential": {{\n  {images}\n }}\n}}'
    )


def deserialize_algebra(text: str, validate: bool = True) -> DGLPresentation:
    """Load an algebra document; ``validate`` checks d² = 0 on generators."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SerializationError(f"invalid JSON: {exc}") from exc
    ctx = _read_context(doc)
    raw = doc.get("differential", {})
    if not isinstance(raw, dict):
        raise SerializationError("differential must be an object")
    images = {}
    for name, expr in raw.items():
        if name not in ctx:
            raise SerializationError(f"differential given for unknown generator {name!r}")
        if not isinstance(expr, str):
            raise SerializationError(f"image of {name!r} must be an expression string")
        images[name] = parse_expression(expr, ctx)
    return DGLPresentation(ctx, Derivation(ctx, -1, images), validate=validate)
