"""Elements of k = F_q(T) as reduced fractions of polynomials."""

from __future__ import annotations

from fractions import Fraction

from .poly import Poly


class RatFunc:
    """num/den with den monic and gcd(num, den) = 1."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, _reduced: bool = False):
        if den is None:
            den = Poly(num.F, (1,), num.var)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced:
            if num.is_zero():
                den = Poly(num.F, (1,), num.var)
            else:
                g = num.gcd(den)
                if not g.is_one():
                    num, den = num.exact_div(g), den.exact_div(g)
                u = den.lc()
                if u != 1:
                    inv = num.F.inv(u)
                    num, den = num.scale(inv), den.scale(inv)
        self.num = num
        self.den = den

    @property
    def F(self):
        return self.num.F

    @classmethod
    def of(cls, x, like: "RatFunc | Poly") -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return cls(x, None, True)
        if isinstance(x, int):
            F = like.F
            return cls(Poly(F, (F.from_int(x),), like.var), None, True)
        raise TypeError(f"cannot coerce {type(x).__name__} to RatFunc")

    @property
    def var(self) -> str:
        return self.num.var

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_poly(self) -> bool:
        return self.den.is_one()

    def __add__(self, o) -> "RatFunc":
        o = RatFunc.of(o, self)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den, self.den.is_one())
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den, True)

    def __sub__(self, o) -> "RatFunc":
        return self + (-RatFunc.of(o, self))

    def __rsub__(self, o) -> "RatFunc":
        return RatFunc.of(o, self) - self

    def __mul__(self, o) -> "RatFunc":
        o = RatFunc.of(o, self)
        if self.den.is_one() and o.den.is_one():
            return RatFunc(self.num * o.num, self.den, True)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inv(self) -> "RatFunc":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero in F_q(T)")
        return RatFunc(self.den, self.num)

    def __truediv__(self, o) -> "RatFunc":
        return self * RatFunc.of(o, self).inv()

    def __rtruediv__(self, o) -> "RatFunc":
        return RatFunc.of(o, self) * self.inv()

    def __pow__(self, k: int) -> "RatFunc":
        if k < 0:
            return self.inv() ** (-k)
        return RatFunc(self.num ** k, self.den ** k, True)

    def __eq__(self, o) -> bool:
        try:
            o = RatFunc.of(o, self)
        except TypeError:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def v_inf(self) -> int:
        """Valuation at infinity, deg den - deg num."""
        if self.num.is_zero():
            raise ValueError("valuation of zero")
        return self.den.deg - self.num.deg

    def sgn(self) -> int:
        """Leading coefficient in 1/T, as a field code."""
        return self.num.lc()

    def v_at(self, p: Poly) -> int:
        """Valuation at the prime (p)."""
        def v(a: Poly) -> int:
            n = 0
            while True:
                qt, r = divmod(a, p)
                if r:
                    return n
                a, n = qt, n + 1
        return v(self.num) - v(self.den)

    def __str__(self) -> str:
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    __repr__ = __str__


def degree_fraction(x: RatFunc) -> Fraction:
    return Fraction(-x.v_inf())
