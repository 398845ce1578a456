"""Canonical text rendering of elements.

Words style writes every tensor word with ``.`` between letters, e.g.
``1/2*v1.v2 - 1/2*v2.v1``; the output parses back to the same element.
Brackets style rewrites Lie elements as right-nested brackets through the
Dynkin projector.
"""

from __future__ import annotations

from ..algebra import Element
from ..rational import ONE, ZERO, format_rational
from ..series import is_lie

__all__ = ["format_element", "format_terms"]


def _join(pieces) -> str:
    """``pieces`` is a list of (coefficient, body-or-None)."""
    out = []
    for coef, body in pieces:
        neg = coef < 0
        mag = -coef if neg else coef
        if body is None:
            text = format_rational(mag)
        elif mag == 1:
            text = body
        else:
            text = f"{format_rational(mag)}*{body}"
        if not out:
            out.append(f"-{text}" if neg else text)
        else:
            out.append(f" - {text}" if neg else f" + {text}")
    return "".join(out) if out else "0"


def format_terms(x: Element) -> str:
    names = x.context.names
    pieces = []
    if x.scalar:
        pieces.append((x.scalar, None))
    for w, c in x.terms():
        pieces.append((c, ".".join(names[i] for i in w)))
    return _join(pieces)


def _nested(word, names) -> str:
    text = names[word[-1]]
    for i in reversed(word[:-1]):
        text = f"[{names[i]},{text}]"
    return text


def _bracket_terms(x: Element) -> list:
    degs = x.context.degrees
    acc: dict = {}
    for w, c in x.terms():
        c = c / len(w)
        if len(w) >= 2:
            a, b = w[-2], w[-1]
            if a == b and not degs[a] & 1:
                continue  # [g, g] = 0 for even g
            if b < a:
                # [a, b] = -(-1)^{|a||b|} [b, a]
                sign = ONE if (degs[a] & 1 and degs[b] & 1) else -ONE
                w = w[:-2] + (b, a)
                c = sign * c
        acc[w] = acc.get(w, ZERO) + c
    return sorted(((w, c) for w, c in acc.items() if c), key=lambda t: (len(t[0]), t[0]))


def format_element(x: Element, style: str = "words") -> str:
    if style not in ("words", "brackets"):
        raise ValueError("style must be 'words' or 'brackets'")
    if style == "words" or x.scalar or not x or not is_lie(x):
        return format_terms(x)
    names = x.context.names
    return _join([(c, _nested(w, names)) for w, c in _bracket_terms(x)])
