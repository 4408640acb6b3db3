"""The Carlitz module Phi_T = T + F and its torsion polynomials."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .base_arith.bivariate import XPoly, ctx
from .base_arith.finite_field import GF
from .base_arith.ideals import MonicIdeal
from .base_arith.poly import Poly
from .base_arith.rational import RatFunc
from .twisted_poly import RationalDomain, TwistedPoly


def sgn(a: Poly) -> int:
    """Sign function: over F_q(T) with the usual infinity it is the
    leading coefficient."""
    if a.is_zero():
        raise ValueError("sgn of zero")
    return a.lc()


@lru_cache(maxsize=4096)
def _coeffs_cached(q: int, c: tuple, var: str) -> tuple[Poly, ...]:
    F = GF(q)
    T = Poly.gen(F, var)
    zero = Poly(F, (), var)
    power = [Poly(F, (1,), var)]  # coefficients of Phi_{T^j}
    total: list[Poly] = []
    for j, a in enumerate(c):
        if j:
            # Phi_T * Phi_b: new_i = T*b_i + b_{i-1}^q
            nxt = [T * power[0]]
            for i in range(1, len(power)):
                nxt.append(T * power[i] + power[i - 1].frobenius(q))
            nxt.append(power[-1].frobenius(q))
            power = nxt
        if a:
            while len(total) < len(power):
                total.append(zero)
            for i, b in enumerate(power):
                total[i] = total[i] + b.scale(a)
    while total and total[-1].is_zero():
        total.pop()
    return tuple(total)


def carlitz_coeffs(a: Poly) -> tuple[Poly, ...]:
    """Coefficients of Phi_a = sum_i c_i F^i, as polynomials in T."""
    return _coeffs_cached(a.F.order, a.c, a.var)


def phi_elem(a: Poly) -> TwistedPoly:
    """Phi_a as a twisted polynomial over F_q(T)."""
    if a.is_zero():
        raise ValueError("Phi_a needs a nonzero a")
    dom = RationalDomain(a.F.order, a.var)
    return TwistedPoly(dom, tuple(RatFunc(c, None, True) for c in carlitz_coeffs(a)))


def phi_ideal(I: MonicIdeal) -> TwistedPoly:
    """The monic generator of the twisted ideal attached to I; with trivial
    class group and sgn = leading coefficient this is Phi of the monic
    generator, whose constant term is that generator."""
    return phi_elem(I.gen)


def phi_of_element(x: Poly) -> TwistedPoly:
    """Phi attached to the principal ideal xO, i.e. sgn(x)^-1 * Phi_x."""
    if x.is_zero():
        raise ValueError("zero ideal")
    return phi_ideal(MonicIdeal(x))


@lru_cache(maxsize=256)
def _division_cached(q: int, c: tuple, var: str) -> XPoly:
    a = Poly(GF(q), c, var)
    return XPoly.q_poly(ctx(q), carlitz_coeffs(a))


def division_poly(m: MonicIdeal) -> XPoly:
    """Phi_m(x) = sum_i c_i x^(q^i) as a polynomial in x."""
    return _division_cached(m.q, m.gen.c, m.gen.var)


@lru_cache(maxsize=256)
def _primitive_cached(q: int, c: tuple, var: str) -> XPoly:
    m = MonicIdeal(Poly(GF(q), c, var))
    num = den = None
    for d in m.divisors():
        mu = d.mobius()
        if mu == 0:
            continue
        f = division_poly(m / d)
        if mu == 1:
            num = f if num is None else num * f
        else:
            den = f if den is None else den * f
    return num if den is None else num.exact_div(den)


def primitive_division_poly(m: MonicIdeal) -> XPoly:
    """Psi_m = prod_{d | m} Phi_{m/d}^mu(d), whose roots are the generators
    of the m-torsion."""
    if m.deg < 1:
        raise ValueError("primitive_division_poly needs a proper ideal")
    return _primitive_cached(m.q, m.gen.c, m.gen.var)


@dataclass(frozen=True)
class XiRatio:
    """xi(a^-1 c) / xi(c), which is independent of c here."""

    a: MonicIdeal
    value: Poly

    def __mul__(self, other: "XiRatio") -> "XiRatio":
        return XiRatio(self.a * other.a, self.value * other.value)


def xi_ratio(a: MonicIdeal, c: MonicIdeal | None = None) -> XiRatio:
    """The ratio xi(a^-1 c) / xi(c) = D(Phi_a)."""
    return XiRatio(a, phi_ideal(a).D().num)
