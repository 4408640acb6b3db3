"""A small expression parser for polynomial text such as ``T^4+T^3+1``.

Grammar: sums of products of powers, with parentheses, integer literals
and named symbols.  Juxtaposition is not multiplication; write ``*``.
The parser evaluates directly in whatever ring the caller supplies.
"""

from __future__ import annotations

import re
from typing import Any, Callable

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    pass


def _tokens(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"bad input at {text[pos:]!r}")
        num, name, op = m.groups()
        if num is not None:
            out.append(("num", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            if op not in "+-*^()":
                raise ParseError(f"unexpected character {op!r}")
            out.append(("op", op))
        pos = m.end()
    return out


def parse_expr(text: str, symbols: dict[str, Any], integer: Callable[[int], Any]) -> Any:
    """Evaluate ``text`` using ``symbols`` for names and ``integer`` for
    literals.  Exponents must be non-negative integer literals."""
    toks = _tokens(text)
    if not toks:
        raise ParseError("empty expression")
    i = 0

    def peek():
        return toks[i] if i < len(toks) else (None, None)

    def take(kind=None, val=None):
        nonlocal i
        t = peek()
        if t[0] is None or (kind and t[0] != kind) or (val and t[1] != val):
            raise ParseError(f"expected {val or kind}, got {t[1]!r}")
        i += 1
        return t

    def expr():
        sign = 1
        if peek() == ("op", "-"):
            take()
            sign = -1
        elif peek() == ("op", "+"):
            take()
        acc = term()
        if sign < 0:
            acc = -acc
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            t = term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term():
        acc = power()
        while peek() == ("op", "*"):
            take()
            acc = acc * power()
        return acc

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            k = take("num")[1]
            return base ** k
        return base

    def atom():
        kind, val = peek()
        if kind == "num":
            take()
            return integer(val)
        if kind == "name":
            take()
            if val not in symbols:
                raise ParseError(f"unknown symbol {val!r}")
            return symbols[val]
        if (kind, val) == ("op", "("):
            take()
            v = expr()
            take("op", ")")
            return v
        if (kind, val) == ("op", "-"):
            take()
            return -atom()
        raise ParseError(f"unexpected token {val!r}")

    out = expr()
    if i != len(toks):
        raise ParseError(f"trailing input near {toks[i][1]!r}")
    return out


def parse_poly(text: str, q: int, var: str = "T"):
    """Parse an element of F_q[T].  ``g`` names the generator of F_q over
    its prime field when q is not prime."""
    from .finite_field import GF
    from .poly import Poly

    F = GF(q)
    syms = {var: Poly.gen(F, var)}
    if F.base is not None:
        syms["g"] = Poly.const(F, F.char, var)  # code p is the class of g
    return parse_expr(text, syms, lambda n: Poly.const(F, F.from_int(n), var))
