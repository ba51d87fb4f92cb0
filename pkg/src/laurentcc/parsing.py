"""Text forms: ring descriptors, series literals, canonical rendering.

Series literal grammar::

    expr  := term (('+' | '-') term)*
    term  := unary (('*' | '/') unary)*
    unary := ('+' | '-') unary | power
    power := atom ('^' ['+' | '-'] INT | '^' '(' ['+' | '-'] INT ')')?
    atom  := INT | NAME | '(' expr ')' | 'O' '(' 't' '^' INT ')'

``NAME`` is ``t`` or a generator of the ring.  ``O(t^k)`` marks the series
as known only below ``t^k``.
"""

from __future__ import annotations

import re

from .errors import LaurentError, ParseError
from .rings import RingDescriptor, make_ring, render_element
from .series import LaurentSeries, invert_unit

MAX_EXPONENT = 10_000

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def parse_ring(text):
    return make_ring(RingDescriptor.parse(text))


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace is left
            break
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        tok = self.take()
        if tok[0] != "op" or tok[1] != value:
            raise ParseError(f"expected {value!r}", tok[2])
        return tok

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty series literal", 0)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2])
        return value

    def expr(self):
        value = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in "*/":
            _, op, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                value = value * self._exact_inverse(rhs, pos)
        return value

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            value = self.unary()
            return -value if tok[1] == "-" else value
        return self.power()

    def _signed_int(self):
        sign = 1
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            sign = -1 if tok[1] == "-" else 1
        tok = self.take()
        if tok[0] != "int":
            raise ParseError("exponent must be an integer", tok[2])
        if tok[1] > MAX_EXPONENT:
            raise ParseError(f"exponent {tok[1]} exceeds the limit {MAX_EXPONENT}", tok[2])
        return sign * tok[1]

    def power(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            if self.peek()[0] == "op" and self.peek()[1] == "(":
                self.take()
                k = self._signed_int()
                self.expect(")")
            else:
                k = self._signed_int()
            if k < 0:
                return self._exact_inverse(base, tok[2]) ** (-k)
            return base ** k
        return base

    def atom(self):
        tok = self.take()
        kind, value, pos = tok
        if kind == "int":
            return LaurentSeries.constant(self.ring, value)
        if kind == "name":
            if value == "O" and self.peek()[0] == "op" and self.peek()[1] == "(":
                return self.order_term()
            if value == "t":
                return LaurentSeries.t(self.ring)
            if value in self.ring.names:
                return LaurentSeries.constant(self.ring, self.ring.gen(value))
            raise ParseError(f"unknown identifier {value!r}", pos)
        if kind == "op" and value == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {value!r}", pos)

    def order_term(self):
        self.expect("(")
        tok = self.take()
        if tok[0] != "name" or tok[1] != "t":
            raise ParseError("O(...) must contain a power of t", tok[2])
        k = 1
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            if self.peek()[0] == "op" and self.peek()[1] == "(":
                self.take()
                k = self._signed_int()
                self.expect(")")
            else:
                k = self._signed_int()
        self.expect(")")
        return LaurentSeries.zero(self.ring, prec=k)

    def _exact_inverse(self, value, pos):
        try:
            inv = invert_unit(value)
        except LaurentError as exc:
            raise ParseError(f"cannot invert: {exc}", pos) from None
        if value.prec is None and inv.prec is not None:
            raise ParseError("inverse is an infinite series; literals must be finite", pos)
        return inv


def parse_series(text, ring):
    """Parse a series literal over ``ring`` (a Ring or descriptor text)."""
    if isinstance(ring, str):
        ring = parse_ring(ring)
    return _Parser(text, ring).parse()


def _render_coefficient_term(x, k):
    """Return ``(sign, body)`` for ``x * t^k``."""
    body = render_element(x)
    single = len(x.coefficients) == 1
    neg = single and body.startswith("-")
    if neg:
        body = body[1:]
    if k == 0:
        return ("-" if neg else "+"), body
    mono = "t" if k == 1 else f"t^{k}"
    if body == "1":
        return ("-" if neg else "+"), mono
    if not single:
        body = f"({body})"
    return ("-" if neg else "+"), f"{body}*{mono}"


def render_series(f):
    """Canonical text, e.g. ``e*t^-1 + t + O(t^5)``."""
    parts = [_render_coefficient_term(x, k) for k, x in sorted(f.coefficients.items())]
    if f.prec is not None:
        parts.append(("+", f"O(t^{f.prec})"))
    if not parts:
        return "0"
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out
