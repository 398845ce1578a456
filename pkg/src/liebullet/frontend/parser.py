"""Recursive-descent parser for element expressions.

Grammar::

    expr    := ['-'] term (('+' | '-') term)*
    term    := rational ['*' product] | product
    product := factor ('.' factor)*
    factor  := name | '[' expr ',' expr ']' | call '(' expr {',' expr} ')' | '(' expr ')'
    rational:= int ['/' uint]

``a.b`` is the tensor (concatenation) product, so the words-style output of
the formatter parses back to the same element.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..algebra import AlgebraContext, AlgebraError, Element, bracket, concat_product
from ..bch import bch_many, bullet_many
from ..correctors import sigma, tau
from ..differential import Derivation, theta_tilde
from ..rational import mpq
from ..series import ad_series, epsilon_coefficients, exp_ad, xi_coefficients

__all__ = ["ParseError", "parse_expression", "CALLS"]


class ParseError(AlgebraError):
    def __init__(self, message: str, line: int, column: int, expected: str | None = None):
        self.line = line
        self.column = column
        self.expected = expected
        where = f"line {line}, column {column}"
        text = f"{message} at {where}"
        if expected:
            text += f" (expected {expected})"
        super().__init__(text)


@dataclass(frozen=True)
class _Token:
    kind: str  # int, name, op, end
    text: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")

# name -> (min args, max args or None, needs d, needs theta)
CALLS = {
    "bch": (2, None, False, False),
    "bullet": (2, None, True, False),
    "exp_ad": (2, 2, False, False),
    "eps_ad": (2, 2, False, False),
    "xi_ad": (2, 2, False, False),
    "sigma": (2, 2, True, False),
    "tau": (2, 2, True, False),
    "d": (1, 1, True, False),
    "theta_tilde": (1, 1, False, True),
    "inv": (1, 1, False, False),
}


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break  # only trailing whitespace left
        start = m.start(m.lastindex)
        kind = ("int", "name", "op")[m.lastindex - 1]
        out.append(_Token(kind, m.group(m.lastindex), start))
        pos = m.end()
    out.append(_Token("end", "", len(text)))
    return out


def _describe(tok: _Token) -> str:
    return "end of input" if tok.kind == "end" else repr(tok.text)


class _Parser:
    def __init__(self, text, context, d, theta):
        self.text = text
        self.context = context
        self.d = d
        self.theta = theta
        self.tokens = _tokenize(text)
        self.i = 0

    # -- helpers ---------------------------------------------------------

    def where(self, pos: int) -> tuple:
        line = self.text.count("\n", 0, pos) + 1
        column = pos - (self.text.rfind("\n", 0, pos) + 1) + 1
        return line, column

    def error(self, message, tok=None, expected=None):
        tok = tok or self.peek()
        line, column = self.where(tok.pos)
        return ParseError(message, line, column, expected)

    def peek(self) -> _Token:
        return self.tokens[self.i]

    def advance(self) -> _Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def accept(self, text: str) -> bool:
        tok = self.peek()
        if tok.kind == "op" and tok.text == text:
            self.i += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            tok = self.peek()
            raise self.error(f"unexpected {_describe(tok)}", tok, repr(text))

    # -- grammar ---------------------------------------------------------

    def parse(self) -> Element:
        x = self.expr()
        tok = self.peek()
        if tok.kind != "end":
            raise self.error(f"unexpected {_describe(tok)}", tok, "'+', '-' or end of input")
        return x

    def expr(self) -> Element:
        negate = self.accept("-")
        x = self.term()
        if negate:
            x = -x
        while True:
            if self.accept("+"):
                x = x + self.term()
            elif self.accept("-"):
                x = x - self.term()
            else:
                return x

    def term(self) -> Element:
        if self.peek().kind == "int":
            c = self.rational()
            if self.accept("*"):
                return self.product().scale(c)
            return self.context.scalar(c)
        return self.product()

    def rational(self) -> mpq:
        num = self.advance()
        if not self.accept("/"):
            return mpq(int(num.text))
        den = self.peek()
        if den.kind != "int":
            raise self.error("malformed rational", den, "an unsigned integer denominator")
        self.advance()
        if int(den.text) == 0:
            raise self.error("malformed rational: zero denominator", den)
        return mpq(int(num.text), int(den.text))

    def product(self) -> Element:
        x = self.factor()
        while self.accept("."):
            x = concat_product(x, self.factor())
        return x

    def factor(self) -> Element:
        tok = self.peek()
        if tok.kind == "name":
            self.advance()
            if self.peek().kind == "op" and self.peek().text == "(":
                return self.call(tok)
            if tok.text not in self.context:
                raise self.error(f"unknown generator {tok.text!r}", tok)
            return self.context.gen(tok.text)
        if self.accept("["):
            x = self.expr()
            self.expect(",")
            y = self.expr()
            self.expect("]")
            return bracket(x, y)
        if self.accept("("):
            x = self.expr()
            self.expect(")")
            return x
        raise self.error(f"unexpected {_describe(tok)}", tok, "a generator, '[', '(' or a call")

    def call(self, tok: _Token) -> Element:
        name = tok.text
        if name not in CALLS:
            raise self.error(f"unknown function {name!r}", tok)
        lo, hi, needs_d, needs_theta = CALLS[name]
        self.expect("(")
        args = [self.expr()]
        while self.accept(","):
            args.append(self.expr())
        self.expect(")")
        if len(args) < lo or (hi is not None and len(args) > hi):
            want = str(lo) if hi == lo else (f"at least {lo}" if hi is None else f"{lo}..{hi}")
            raise self.error(f"{name} takes {want} arguments, got {len(args)}", tok)
        if needs_d and self.d is None:
            raise self.error(f"{name} needs a differential", tok)
        if needs_theta and self.theta is None:
            raise self.error(f"{name} needs the derivation theta", tok)
        try:
            return self.evaluate(name, args)
        except ParseError:
            raise
        except AlgebraError as exc:
            raise self.error(f"{name}: {exc}", tok) from exc

    def evaluate(self, name: str, args: list) -> Element:
        N = self.context.truncation
        if name == "bch":
            return bch_many(*args)
        if name == "bullet":
            return bullet_many(self.d, args)
        if name == "exp_ad":
            return exp_ad(*args)
        if name == "eps_ad":
            return ad_series(epsilon_coefficients(N), *args)
        if name == "xi_ad":
            return ad_series(xi_coefficients(N), *args)
        if name == "sigma":
            return sigma(self.d, *args)
        if name == "tau":
            return tau(self.d, *args)
        if name == "d":
            return self.d(args[0])
        if name == "theta_tilde":
            return theta_tilde(args[0], self.theta)
        if name == "inv":
            return -args[0]
        raise AssertionError(name)


def parse_expression(
    text: str,
    context: AlgebraContext,
    d: Derivation | None = None,
    theta: Derivation | None = None,
) -> Element:
    """Parse ``text`` into an exact element of ``context``.

    ``d`` enables ``d``, ``bullet``, ``sigma`` and ``tau``; ``theta``
    enables ``theta_tilde``.
    """
    if d is not None and d.context != context:
        raise AlgebraError("differential lives on another context")
    return _Parser(text, context, d, theta).parse()
