"""Text grammar for curve polynomials and zeta expressions.

    expr   := '-'? term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' '-'? nat)?
    base   := nat | var | '(' expr ')'

Curve polynomials admit the variables passed in (x, y by default) with
nonnegative exponents and no division.  Zeta expressions admit L and t;
L may carry negative exponents, division is exact in Q(L)(t).  Parsing
is whitespace-insensitive; rendering produces the canonical graded-lex
form that parses back to the same value.
"""

from __future__ import annotations

from .classpoly import ClassPoly
from .mpoly import MPoly
from .series import RationalFn


class ParseError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class _Tokens:
    def __init__(self, text):
        self.text = text
        self.toks = []
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                self.toks.append(("nat", int(text[i:j]), i))
                i = j
            elif ch.isalpha():
                j = i
                while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                    j += 1
                self.toks.append(("name", text[i:j], i))
                i = j
            elif ch in "+-*/^()":
                self.toks.append((ch, ch, i))
                i += 1
            else:
                raise ParseError(f"unexpected character {ch!r}", i)
        self.toks.append(("end", None, len(text)))
        self.pos = 0

    def peek(self):
        return self.toks[self.pos]

    def next(self):
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, kind):
        t = self.next()
        if t[0] != kind:
            raise ParseError(f"expected {kind!r}, found {t[1]!r}", t[2])
        return t


class _ExprParser:
    """Recursive-descent parser over a small value algebra."""

    def __init__(self, tokens, ops):
        self.tk = tokens
        self.ops = ops

    def parse(self):
        v = self.expr()
        t = self.tk.peek()
        if t[0] != "end":
            raise ParseError(f"unexpected trailing input {t[1]!r}", t[2])
        return v

    def expr(self):
        negate = False
        if self.tk.peek()[0] == "-":
            self.tk.next()
            negate = True
        v = self.term()
        if negate:
            v = self.ops["neg"](v)
        while self.tk.peek()[0] in "+-":
            op = self.tk.next()[0]
            w = self.term()
            v = self.ops["add"](v, w) if op == "+" else self.ops["sub"](v, w)
        return v

    def term(self):
        v = self.factor()
        while self.tk.peek()[0] in "*/":
            op, _, pos = self.tk.next()
            w = self.factor()
            if op == "*":
                v = self.ops["mul"](v, w)
            else:
                v = self.ops["div"](v, w, pos)
        return v

    def factor(self):
        v = self.base()
        if self.tk.peek()[0] == "^":
            self.tk.next()
            sign = 1
            if self.tk.peek()[0] == "-":
                self.tk.next()
                sign = -1
            t = self.tk.expect("nat")
            v = self.ops["pow"](v, sign * t[1], t[2])
        return v

    def base(self):
        kind, val, pos = self.tk.next()
        if kind == "nat":
            return self.ops["const"](val)
        if kind == "name":
            return self.ops["var"](val, pos)
        if kind == "(":
            v = self.expr()
            self.tk.expect(")")
            return v
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_poly(text, variables=("x", "y")) -> MPoly:
    """Parse a polynomial over the given variables with integer coefficients."""
    variables = tuple(variables)

    def no_div(v, w, pos):
        raise ParseError("division is not allowed in a polynomial", pos)

    def power(v, e, pos):
        if e < 0:
            raise ParseError("negative exponent in a polynomial", pos)
        return v**e

    def var(name, pos):
        if name not in variables:
            raise ParseError(f"unknown symbol {name!r}", pos)
        return MPoly.var(variables, name)

    ops = {
        "add": lambda a, b: a + b,
        "sub": lambda a, b: a - b,
        "mul": lambda a, b: a * b,
        "neg": lambda a: -a,
        "div": no_div,
        "pow": power,
        "const": lambda c: MPoly.const(variables, c),
        "var": var,
    }
    return _ExprParser(_Tokens(text), ops).parse()


def parse_lt_expr(text) -> RationalFn:
    """Parse a zeta expression in L and t into an exact RationalFn."""

    def power(v, e, pos):
        if v.is_zero() and e < 0:
            raise ParseError("negative power of zero", pos)
        return v**e

    def var(name, pos):
        if name == "L":
            return RationalFn.const(ClassPoly.lpow(1))
        if name == "t":
            return RationalFn.t_power(1)
        raise ParseError(f"unknown symbol {name!r}", pos)

    def div(a, b, pos):
        if b.is_zero():
            raise ParseError("division by zero", pos)
        return a / b

    ops = {
        "add": lambda a, b: a + b,
        "sub": lambda a, b: a - b,
        "mul": lambda a, b: a * b,
        "neg": lambda a: -a,
        "div": div,
        "pow": power,
        "const": lambda c: RationalFn.const(ClassPoly.const(c)),
        "var": var,
    }
    return _ExprParser(_Tokens(text), ops).parse()
