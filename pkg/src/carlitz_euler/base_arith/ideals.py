"""Ideals of F_q[T] and the unit groups (F_q[T]/m)^x."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product

from .factor import factor
from .intmath import factorint
from .poly import Poly, all_polys_below


@dataclass(frozen=True)
class MonicIdeal:
    """The ideal (gen) of F_q[T], stored by its monic generator."""

    gen: Poly

    def __post_init__(self):
        if self.gen.is_zero():
            raise ValueError("the zero ideal is not allowed")
        if not self.gen.is_monic():
            object.__setattr__(self, "gen", self.gen.monic())

    @property
    def F(self):
        return self.gen.F

    @property
    def q(self) -> int:
        return self.gen.F.order

    @property
    def deg(self) -> int:
        return self.gen.deg

    @property
    def norm(self) -> int:
        return self.q ** self.deg

    @cached_property
    def factors(self) -> tuple[tuple[Poly, int], ...]:
        return tuple(factor(self.gen)) if self.deg > 0 else ()

    def is_prime(self) -> bool:
        return len(self.factors) == 1 and self.factors[0][1] == 1

    def divisors(self) -> list["MonicIdeal"]:
        """All ideal divisors, sorted by degree then coefficients."""
        one = Poly(self.F, (1,), self.gen.var)
        out = []
        for exps in product(*[range(e + 1) for _, e in self.factors]):
            g = one
            for (p, _), k in zip(self.factors, exps):
                g = g * p ** k
            out.append(MonicIdeal(g))
        return sorted(out, key=lambda I: I.gen.sort_key())

    def mobius(self) -> int:
        if any(e > 1 for _, e in self.factors):
            return 0
        return -1 if len(self.factors) % 2 else 1

    def __mul__(self, other: "MonicIdeal") -> "MonicIdeal":
        return MonicIdeal(self.gen * other.gen)

    def __truediv__(self, other: "MonicIdeal") -> "MonicIdeal":
        return MonicIdeal(self.gen.exact_div(other.gen))

    def divides(self, other: "MonicIdeal") -> bool:
        return self.gen.divides(other.gen)

    def coprime(self, other) -> bool:
        g = other.gen if isinstance(other, MonicIdeal) else other
        return self.gen.gcd(g).is_one()

    def __str__(self) -> str:
        return f"({self.gen})"

    def __lt__(self, other: "MonicIdeal") -> bool:
        return self.gen.sort_key() < other.gen.sort_key()


def euler_phi(m: MonicIdeal) -> int:
    """#(F_q[T]/m)^x."""
    n = 1
    for p, e in m.factors:
        Np = m.q ** p.deg
        n *= (Np - 1) * Np ** (e - 1)
    return n


@dataclass
class UnitGroup:
    """(O/m)^x as an explicit product of cyclic groups.

    ``gens[i]`` has order ``orders[i]`` and every unit is uniquely
    ``prod gens[i]^e_i`` with 0 <= e_i < orders[i].
    """

    modulus: MonicIdeal
    gens: list[Poly]
    orders: list[int]
    _log: dict = field(repr=False, default_factory=dict)

    @property
    def order(self) -> int:
        n = 1
        for o in self.orders:
            n *= o
        return n

    @property
    def exponent(self) -> int:
        from math import lcm

        return lcm(*self.orders) if self.orders else 1

    def elements(self) -> list[Poly]:
        return sorted(self._log, key=Poly.sort_key)

    def reduce(self, a: Poly) -> Poly:
        return a % self.modulus.gen

    def mul(self, a: Poly, b: Poly) -> Poly:
        return (a * b) % self.modulus.gen

    def inv(self, a: Poly) -> Poly:
        return a.inv_mod(self.modulus.gen)

    def pow(self, a: Poly, k: int) -> Poly:
        if k < 0:
            a, k = self.inv(a), -k
        return a.pow_mod(k, self.modulus.gen)

    def log(self, a: Poly) -> tuple[int, ...]:
        """Exponent vector of a in terms of ``gens``."""
        r = self.reduce(a)
        if r not in self._log:
            raise ValueError(f"{a} is not a unit modulo {self.modulus}")
        return self._log[r]

    def exp(self, v) -> Poly:
        x = Poly(self.modulus.F, (1,), self.modulus.gen.var)
        for g, e, o in zip(self.gens, v, self.orders):
            x = self.mul(x, self.pow(g, e % o))
        return x

    def element_order(self, a: Poly) -> int:
        from math import gcd, lcm

        o = 1
        for e, n in zip(self.log(a), self.orders):
            o = lcm(o, n // gcd(e, n))
        return o

    def subgroup(self, generators) -> frozenset:
        """The subgroup generated by ``generators``, as a frozenset."""
        one = Poly(self.modulus.F, (1,), self.modulus.gen.var) % self.modulus.gen
        H = {one}
        frontier = [one]
        gens = [self.reduce(g) for g in generators]
        while frontier:
            nxt = []
            for h in frontier:
                for g in gens:
                    x = self.mul(h, g)
                    if x not in H:
                        H.add(x)
                        nxt.append(x)
            frontier = nxt
        return frozenset(H)

    def constants(self) -> frozenset:
        """The image of F_q^x."""
        F = self.modulus.F
        return frozenset(Poly(F, (c,), self.modulus.gen.var) % self.modulus.gen
                         for c in range(1, F.order))


def _units(m: MonicIdeal) -> list[Poly]:
    return [a for a in all_polys_below(m.F, m.deg, m.gen.var)
            if a and a.gcd(m.gen).is_one()]


def _pow(a: Poly, k: int, m: Poly) -> Poly:
    return a.pow_mod(k, m)


@lru_cache(maxsize=None)
def _unit_group_cached(q: int, gen_coeffs: tuple, var: str) -> UnitGroup:
    from .finite_field import GF

    m = MonicIdeal(Poly(GF(q), gen_coeffs, var))
    mg = m.gen
    one = Poly(m.F, (1,), var) % mg
    units = _units(m) if m.deg > 0 else [one]
    n = len(units)
    gens: list[Poly] = []
    orders: list[int] = []
    # work one Sylow subgroup at a time
    for p, a in sorted(factorint(n).items()):
        cof = n // p ** a
        P = sorted({_pow(u, cof, mg) for u in units}, key=Poly.sort_key)
        basis: list[Poly] = []
        bord: list[int] = []
        H = {one: ()}
        while len(H) < len(P):
            best = None
            for g in P:
                if g in H:
                    continue
                k, x = 0, g
                while x not in H:
                    x = (x * x if p == 2 else _pow(x, p, mg)) % mg
                    k += 1
                if best is None or k > best[1]:
                    best = (g, k, x)
            g, k, x = best
            pk = p ** k
            c = H[x]
            # an element of maximal order in P/H lifts to a complement
            adj = g
            for b, ci, ob in zip(basis, c, bord):
                assert ci % pk == 0
                adj = (adj * _pow(b, (ob - ci // pk) % ob, mg)) % mg
            newH = {}
            y = one
            for j in range(pk):
                for h, v in H.items():
                    newH[(h * y) % mg] = v + (j,)
                y = (y * adj) % mg
            assert len(newH) == len(H) * pk
            H = {h: v for h, v in newH.items()}
            basis.append(adj)
            bord.append(pk)
        gens += basis
        orders += bord
    G = UnitGroup(m, gens, orders)
    log = {}
    for v in product(*[range(o) for o in orders]):
        log[G.exp(v)] = v
    assert len(log) == n, "presentation check failed"
    G._log = log
    return G


def unit_group(m: MonicIdeal) -> UnitGroup:
    """The unit group of O/m with a verified cyclic decomposition."""
    return _unit_group_cached(m.q, m.gen.c, m.gen.var)


def discrete_log(G: UnitGroup, x: Poly) -> tuple[int, ...]:
    return G.log(x)


def crt(residues: list[Poly], moduli: list[Poly]) -> Poly:
    """Solve x = r_i mod m_i for pairwise coprime m_i."""
    x = Poly(moduli[0].F, (), moduli[0].var)
    M = Poly(moduli[0].F, (1,), moduli[0].var)
    for r, m in zip(residues, moduli):
        t = ((r - x) * M.inv_mod(m)) % m
        x = x + M * t
        M = M * m
    return x % M
