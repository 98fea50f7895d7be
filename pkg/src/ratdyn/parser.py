"""Expression parsing for maps in z and curves in x, y.

Precedence, loosest first: composition (o), addition, multiplication,
unary minus, powers.  The power operator also carries the iteration
suffix: f^o3 (or with the ring operator symbol) is the third iterate.
Whitespace is insignificant.  Chebyshev aliases T1 .. T12 are built in.
"""

from __future__ import annotations

from fractions import Fraction

from .bipolys import BiPoly
from .errors import ParseError
from .ratmaps import RatMap, chebyshev


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._run()

    def _run(self):
        t = self.text
        i = 0
        while i < len(t):
            ch = t[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(t) and t[j].isdigit():
                    j += 1
                self.tokens.append(("num", int(t[i:j]), i))
                i = j
                continue
            if ch.isalpha():
                j = i
                while j < len(t) and (t[j].isalnum() or t[j] == "_"):
                    j += 1
                self.tokens.append(("ident", t[i:j], i))
                i = j
                continue
            if ch in "+-*/^()":
                self.tokens.append((ch, ch, i))
                i += 1
                continue
            if ch == "∘":  # ring operator, same as the letter o
                self.tokens.append(("ident", "o", i))
                i += 1
                continue
            raise ParseError(f"unexpected character {ch!r}", position=i)
        self.tokens.append(("end", None, len(t)))


class _Parser:
    """Shared recursive-descent core; the atom hook fixes the algebra."""

    def __init__(self, text: str):
        self.text = text
        self.toks = _Lexer(text).tokens
        self.k = 0

    def peek(self):
        return self.toks[self.k]

    def next(self):
        tok = self.toks[self.k]
        self.k += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError(f"expected {kind!r}, found {tok[1]!r}", position=tok[2])
        return tok

    def fail(self, message):
        tok = self.peek()
        raise ParseError(message, position=tok[2])

    # expression := composition chain over additive terms
    def parse(self):
        value = self.additive()
        while self.peek()[0] == "ident" and self.peek()[1] == "o":
            self.next()
            rhs = self.additive()
            value = self.compose(value, rhs)
        if self.peek()[0] != "end":
            self.fail(f"trailing input {self.peek()[1]!r}")
        return value

    def additive(self):
        value = self.multiplicative()
        while self.peek()[0] in ("+", "-"):
            op = self.next()[0]
            rhs = self.multiplicative()
            value = value + rhs if op == "+" else value - rhs
        return value

    def multiplicative(self):
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op = self.next()[0]
            rhs = self.unary()
            value = value * rhs if op == "*" else self.divide(value, rhs)
        return value

    def unary(self):
        if self.peek()[0] == "-":
            self.next()
            return -self.unary()
        if self.peek()[0] == "+":
            self.next()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        while self.peek()[0] == "^":
            self.next()
            tok = self.peek()
            if tok[0] == "ident" and tok[1].startswith("o") and tok[1][1:].isdigit():
                self.next()
                base = self.iterate(base, int(tok[1][1:]))
                continue
            if tok[0] == "ident" and tok[1] == "o":
                self.next()
                count = self.expect("num")[1]
                base = self.iterate(base, count)
                continue
            sign = 1
            if tok[0] == "-":
                self.next()
                sign = -1
            exp = self.expect("num")[1]
            base = self.int_power(base, sign * exp)
        return base

    def atom(self):
        tok = self.next()
        if tok[0] == "num":
            return self.constant(tok[1])
        if tok[0] == "(":
            value = self.additive()
            while self.peek()[0] == "ident" and self.peek()[1] == "o":
                self.next()
                value = self.compose(value, self.additive())
            self.expect(")")
            return value
        if tok[0] == "ident":
            return self.identifier(tok[1], tok[2])
        raise ParseError(f"unexpected token {tok[1]!r}", position=tok[2])

    # algebra hooks
    def constant(self, n):
        raise NotImplementedError

    def identifier(self, name, pos):
        raise NotImplementedError

    def compose(self, f, g):
        raise NotImplementedError

    def iterate(self, f, k):
        raise NotImplementedError

    def int_power(self, base, e):
        if abs(e) > 512:
            self.fail("exponent too large")
        if e == 0:
            return self.constant(1)
        out = base
        for _ in range(abs(e) - 1):
            out = out * base
        if e < 0:
            out = self.divide(self.constant(1), out)
        return out

    def divide(self, a, b):
        try:
            return a / b
        except ZeroDivisionError as exc:
            raise ParseError("division by zero") from exc


class _MapParser(_Parser):
    def constant(self, n):
        return RatMap.constant(n)

    def identifier(self, name, pos):
        if name == "z":
            return RatMap.identity()
        if name.startswith("T") and name[1:].isdigit():
            k = int(name[1:])
            if 1 <= k <= 12:
                return chebyshev(k)
        raise ParseError(f"unknown name {name!r}", position=pos)

    def compose(self, f, g):
        return f.compose(g)

    def iterate(self, f, k):
        if k < 1:
            raise ParseError("iteration count must be positive")
        if f.degree**k > 4096:
            raise ParseError("iterate degree too large")
        return f.iterate(k)


class _CurveParser(_Parser):
    def constant(self, n):
        return BiPoly.constant(n)

    def identifier(self, name, pos):
        if name == "x":
            return BiPoly.var_x()
        if name == "y":
            return BiPoly.var_y()
        raise ParseError(f"unknown curve variable {name!r}", position=pos)

    def compose(self, f, g):
        raise ParseError("composition is not defined for curves")

    def iterate(self, f, k):
        raise ParseError("iteration is not defined for curves")

    def divide(self, a, b):
        if isinstance(b, BiPoly):
            if b.deg_x > 0 or b.deg_y > 0:
                raise ParseError("curves admit division by constants only")
            b = b.terms.get((0, 0), Fraction(0))
        if b == 0:
            raise ParseError("division by zero")
        return a * (Fraction(1) / Fraction(b))


def parse_map(text: str) -> RatMap:
    """Exact rational map from an expression in z."""
    value = _MapParser(text).parse()
    if not isinstance(value, RatMap):
        raise ParseError("expression did not produce a map")
    if value.den.is_zero:
        raise ParseError("denominator vanished")
    return value


def parse_curve(text: str) -> BiPoly:
    """Bivariate polynomial from an expression in x and y."""
    value = _CurveParser(text).parse()
    if not isinstance(value, BiPoly):
        raise ParseError("expression did not produce a curve polynomial")
    if value.is_zero:
        raise ParseError("the zero polynomial defines no curve")
    return value


def print_map(f: RatMap) -> str:
    return f.to_str()
