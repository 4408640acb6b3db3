"""Twisted polynomials L{F} with F*w = w^q*F.

Coefficients live in a *domain*: an object exposing the field operations
(``zero``, ``one``, ``add``, ``sub``, ``neg``, ``mul``, ``inv``,
``frob(a, i)`` for a^(q^i), ``is_zero``, ``eq``, ``fmt``) together with the
twisting exponent ``q``.  Domains for F_q, finite extensions of F_q and
F_q(T) are defined here; the cyclotomic fields supply their own.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .base_arith.finite_field import FiniteField, GF
from .base_arith.parse import parse_expr
from .base_arith.poly import Poly
from .base_arith.rational import RatFunc


class FiniteDomain:
    """A finite field E containing F_q, elements as codes."""

    def __init__(self, E: FiniteField, q: int):
        self.E = E
        self.q = q
        self.zero, self.one = 0, 1
        self.key = ("finite", E.order, E.char, q)

    def add(self, a, b):
        return self.E.add(a, b)

    def sub(self, a, b):
        return self.E.sub(a, b)

    def neg(self, a):
        return self.E.neg(a)

    def mul(self, a, b):
        return self.E.mul(a, b)

    def inv(self, a):
        return self.E.inv(a)

    def frob(self, a, i: int):
        return self.E.pow(a, self.q ** i) if i else a

    def is_zero(self, a) -> bool:
        return a == 0

    def eq(self, a, b) -> bool:
        return a == b

    def fmt(self, a) -> str:
        return self.E.fmt(a)

    def random(self, rng: random.Random):
        return rng.randrange(self.E.order)

    def from_int(self, n: int):
        return self.E.from_int(n)


class RationalDomain:
    """k = F_q(T) with elements ``RatFunc``."""

    def __init__(self, q: int, var: str = "T"):
        self.q = q
        self.F = GF(q)
        self.var = var
        self.zero = RatFunc(Poly(self.F, (), var))
        self.one = RatFunc(Poly(self.F, (1,), var))
        self.T = RatFunc(Poly.gen(self.F, var))
        self.key = ("rational", q, var)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return a.inv()

    def frob(self, a, i: int):
        if i == 0:
            return a
        Q = self.q ** i
        return RatFunc(a.num.frobenius(Q), a.den.frobenius(Q), True)

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def eq(self, a, b) -> bool:
        return a == b

    def fmt(self, a) -> str:
        return str(a)

    def random(self, rng: random.Random, max_deg: int = 3, denominators: bool = True):
        def rp(d):
            return Poly(self.F, [rng.randrange(self.q) for _ in range(d + 1)], self.var)
        num = rp(rng.randint(0, max_deg))
        if not denominators or rng.random() < 0.5:
            return RatFunc(num)
        den = rp(rng.randint(0, max_deg))
        while den.is_zero():
            den = rp(rng.randint(0, max_deg))
        return RatFunc(num, den)

    def from_int(self, n: int):
        return RatFunc(Poly(self.F, (self.F.from_int(n),), self.var))

    def lift(self, a: Poly) -> RatFunc:
        return RatFunc(a, None, True)


def _field_key(dom):
    return getattr(dom, "key", id(dom))


def _trim(dom, coeffs) -> tuple:
    c = list(coeffs)
    while c and dom.is_zero(c[-1]):
        c.pop()
    return tuple(c)


@dataclass(frozen=True, eq=False)
class TwistedPoly:
    """sum_i coeffs[i] * F^i over ``dom``, with F*w = w^q*F."""

    dom: object
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.dom, self.coeffs))

    # -- constructors -----------------------------------------------------------
    @classmethod
    def const(cls, dom, a) -> "TwistedPoly":
        return cls(dom, (a,))

    @classmethod
    def frobenius(cls, dom, k: int = 1) -> "TwistedPoly":
        return cls(dom, (dom.zero,) * k + (dom.one,))

    def _new(self, coeffs) -> "TwistedPoly":
        return TwistedPoly(self.dom, tuple(coeffs))

    def _coerce(self, o) -> "TwistedPoly":
        if isinstance(o, TwistedPoly):
            if _field_key(o.dom) != _field_key(self.dom):
                raise TypeError("twisted polynomials over different coefficient fields")
            return o
        if isinstance(o, int):
            return self._new((self.dom.from_int(o),))
        return self._new((o,))

    # -- data ---------------------------------------------------------------------
    @property
    def deg(self) -> int:
        return len(self.coeffs) - 1

    def lc(self):
        return self.coeffs[-1]

    def D(self):
        """Constant term."""
        return self.coeffs[0] if self.coeffs else self.dom.zero

    def coeff(self, i: int):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.dom.zero

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, o) -> bool:
        if not isinstance(o, TwistedPoly):
            return NotImplemented
        if _field_key(o.dom) != _field_key(self.dom):
            return False
        if len(self.coeffs) != len(o.coeffs):
            return False
        return all(self.dom.eq(a, b) for a, b in zip(self.coeffs, o.coeffs))

    def __hash__(self):
        return hash(tuple(str(c) for c in self.coeffs))

    # -- ring operations ------------------------------------------------------------
    def __add__(self, o) -> "TwistedPoly":
        o = self._coerce(o)
        d = self.dom
        n = max(len(self.coeffs), len(o.coeffs))
        return self._new(d.add(self.coeff(i), o.coeff(i)) for i in range(n))

    __radd__ = __add__

    def __neg__(self) -> "TwistedPoly":
        return self._new(self.dom.neg(a) for a in self.coeffs)

    def __sub__(self, o) -> "TwistedPoly":
        return self + (-self._coerce(o))

    def __rsub__(self, o) -> "TwistedPoly":
        return self._coerce(o) - self

    def __mul__(self, o) -> "TwistedPoly":
        """(a F^i)(b F^j) = a b^(q^i) F^(i+j)."""
        o = self._coerce(o)
        d = self.dom
        if self.is_zero() or o.is_zero():
            return self._new(())
        out = [d.zero] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if d.is_zero(a):
                continue
            for j, b in enumerate(o.coeffs):
                if not d.is_zero(b):
                    out[i + j] = d.add(out[i + j], d.mul(a, d.frob(b, i)))
        return self._new(out)

    def __rmul__(self, o) -> "TwistedPoly":
        return self._coerce(o) * self

    def __pow__(self, k: int) -> "TwistedPoly":
        r = self._new((self.dom.one,))
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def left_divmod(self, B: "TwistedPoly") -> tuple["TwistedPoly", "TwistedPoly"]:
        """Return (Q, R) with self = Q*B + R and deg R < deg B."""
        if B.is_zero():
            raise ZeroDivisionError("division by the zero twisted polynomial")
        d = self.dom
        R = self
        Q = self._new(())
        b = B.deg
        lcB = B.lc()
        while not R.is_zero() and R.deg >= b:
            k = R.deg - b
            c = d.mul(R.lc(), d.inv(d.frob(lcB, k)))
            term = self._new((d.zero,) * k + (c,))
            Q = Q + term
            R = R - term * B
        return Q, R

    def right_divmod(self, B: "TwistedPoly") -> tuple["TwistedPoly", "TwistedPoly"]:
        """Return (Q, R) with self = B*Q + R; needs q-th roots, so only for
        perfect coefficient domains given as finite fields."""
        if B.is_zero():
            raise ZeroDivisionError("division by the zero twisted polynomial")
        d = self.dom
        if not isinstance(d, FiniteDomain):
            raise NotImplementedError("right division needs a perfect domain")
        R = self
        Q = self._new(())
        b = B.deg
        Qord = d.E.order
        while not R.is_zero() and R.deg >= b:
            k = R.deg - b
            # B * c F^k has leading coefficient lcB * c^(q^b)
            t = d.mul(R.lc(), d.inv(B.lc()))
            # c = t^(q^-b): invert Frobenius on the finite field
            e = pow(d.q, -b, Qord - 1) if Qord > 2 else 1
            c = d.E.pow(t, e) if t else 0
            term = self._new((d.zero,) * k + (c,))
            Q = Q + term
            R = R - B * term
        return Q, R

    def apply(self, x, target=None, embed=None):
        """Evaluate sum a_i x^(q^i) with x in ``target`` (defaults to the
        coefficient domain) and coefficients mapped by ``embed``."""
        tgt = target or self.dom
        emb = embed or (lambda a: a)
        acc = tgt.zero
        y = x
        for i, a in enumerate(self.coeffs):
            if i:
                y = tgt.frob(y, 1)
            if not self.dom.is_zero(a):
                acc = tgt.add(acc, tgt.mul(emb(a), y))
        return acc

    # -- display --------------------------------------------------------------------
    def __str__(self) -> str:
        d = self.dom
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[i]
            if d.is_zero(a):
                continue
            s = d.fmt(a)
            if i == 0:
                terms.append(s)
                continue
            mono = "F" if i == 1 else f"F^{i}"
            if d.eq(a, d.one):
                terms.append(mono)
            elif any(ch in s for ch in "+-/("):
                terms.append(f"({s})*{mono}")
            else:
                terms.append(f"{s}*{mono}")
        return " + ".join(terms) if terms else "0"

    __repr__ = __str__


def parse_twisted(text: str, q: int) -> TwistedPoly:
    """Parse text like ``F^2 + (T^2+T)*F + T^2`` over F_q(T)."""
    dom = RationalDomain(q)
    syms = {"F": TwistedPoly.frobenius(dom), "T": TwistedPoly.const(dom, dom.T)}
    Fq = GF(q)
    if Fq.base is not None:
        syms["g"] = TwistedPoly.const(dom, RatFunc(Poly.const(Fq, Fq.char)))
    return parse_expr(text, syms, lambda n: TwistedPoly.const(dom, dom.from_int(n)))
