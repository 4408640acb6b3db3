"""Character L-functions over F_q[T], their values at s = 0, the Stark
formula at infinity and divisor class numbers of subfields of k_m."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .base_arith.ideals import MonicIdeal, UnitGroup, crt, unit_group
from .base_arith.intmath import divisors as int_divisors
from .base_arith.poly import Poly, monics
from .cyclo_field import generators_of


# -- exact cyclotomic numbers ---------------------------------------------------------

def _int_poly_divmod(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Division of integer polynomials by a monic b (low degree first)."""
    a = list(a)
    db = len(b) - 1
    if len(a) <= db:
        return [0], a
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            quo[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return quo, a[:db]


@lru_cache(maxsize=None)
def cyclotomic_poly(e: int) -> tuple[int, ...]:
    """The e-th cyclotomic polynomial, low degree first."""
    num = [-1] + [0] * (e - 1) + [1]
    for d in int_divisors(e):
        if d < e:
            num, r = _int_poly_divmod(num, list(cyclotomic_poly(d)))
            assert not any(r)
    while len(num) > 1 and num[-1] == 0:
        num.pop()
    return tuple(num)


@dataclass(frozen=True)
class CycloNumber:
    """An element of Q(zeta_e) in the basis 1, zeta, ..., zeta^(phi(e)-1)."""

    e: int
    c: tuple

    @classmethod
    def of(cls, e: int, x) -> "CycloNumber":
        if isinstance(x, CycloNumber):
            return x
        phi = len(cyclotomic_poly(e)) - 1
        return cls(e, (Fraction(x),) + (Fraction(0),) * (phi - 1))

    @classmethod
    def zeta_power(cls, e: int, k: int) -> "CycloNumber":
        k %= e
        return cls._reduce(e, [Fraction(0)] * k + [Fraction(1)])

    @classmethod
    def _reduce(cls, e: int, coeffs) -> "CycloNumber":
        phi_e = cyclotomic_poly(e)
        d = len(phi_e) - 1
        a = [Fraction(x) for x in coeffs] + [Fraction(0)] * max(0, d - len(coeffs))
        for i in range(len(a) - 1, d - 1, -1):
            c = a[i]
            if c:
                for j in range(d + 1):
                    a[i - d + j] -= c * phi_e[j]
        return cls(e, tuple(a[:d]))

    def _lift(self, o) -> "CycloNumber":
        o = CycloNumber.of(self.e, o)
        if o.e != self.e:
            raise ValueError("cyclotomic numbers of different levels")
        return o

    def __add__(self, o) -> "CycloNumber":
        o = self._lift(o)
        return CycloNumber(self.e, tuple(a + b for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self) -> "CycloNumber":
        return CycloNumber(self.e, tuple(-a for a in self.c))

    def __sub__(self, o) -> "CycloNumber":
        return self + (-self._lift(o))

    def __rsub__(self, o) -> "CycloNumber":
        return self._lift(o) - self

    def __mul__(self, o) -> "CycloNumber":
        o = self._lift(o)
        prod = [Fraction(0)] * (len(self.c) + len(o.c) - 1)
        for i, a in enumerate(self.c):
            if a:
                for j, b in enumerate(o.c):
                    if b:
                        prod[i + j] += a * b
        return CycloNumber._reduce(self.e, prod)

    __rmul__ = __mul__

    def __eq__(self, o) -> bool:
        try:
            o = self._lift(o)
        except (TypeError, ValueError):
            return NotImplemented
        return self.c == o.c

    def __hash__(self):
        return hash((self.e, self.c))

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0]

    def to_json(self) -> list[str]:
        return [_frac_str(x) for x in self.c]

    def __str__(self) -> str:
        terms = []
        for k, a in enumerate(self.c):
            if not a:
                continue
            s = _frac_str(a)
            if k == 0:
                terms.append(s)
            else:
                z = "z" if k == 1 else f"z^{k}"
                terms.append(z if s == "1" else f"-{z}" if s == "-1" else f"({s})*{z}")
        return " + ".join(terms) if terms else "0"


def _frac_str(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


# -- characters ------------------------------------------------------------------------

def subgroup_closure(G: UnitGroup, gens) -> frozenset:
    return G.subgroup(list(gens))


def constants_subgroup(m: MonicIdeal) -> frozenset:
    return unit_group(m).constants() if m.deg >= 1 else frozenset()


@dataclass(frozen=True)
class Character:
    """chi on (O/m)^x, trivial on S, with chi(gen_i) = zeta_e^(k_i)."""

    modulus: MonicIdeal
    S: frozenset = field(repr=False)
    e: int
    exps: tuple
    index: int = 0

    @property
    def group(self) -> UnitGroup:
        return unit_group(self.modulus)

    def exponent_of(self, a: Poly) -> int:
        G = self.group
        logs = G.log(a % self.modulus.gen)
        return sum(k * l for k, l in zip(self.exps, logs)) % self.e

    def __call__(self, a: Poly) -> CycloNumber:
        return CycloNumber.zeta_power(self.e, self.exponent_of(a))

    def is_trivial(self) -> bool:
        return not any(self.exps)

    def order(self) -> int:
        g = self.e
        for k in self.exps:
            g = gcd(g, k)
        return self.e // g

    @property
    def conductor(self) -> MonicIdeal:
        return character_conductor(self)

    def describe(self) -> dict:
        return {"index": self.index, "exponents": list(self.exps), "zeta_order": self.e,
                "conductor": str(self.conductor)}


def quotient_exponent(G: UnitGroup, S: frozenset) -> int:
    """Exponent of G/S."""
    from .base_arith.intmath import lcm

    e = 1
    for a in G.elements():
        k, x = 1, a
        while x not in S:
            x = G.mul(x, a)
            k += 1
        e = lcm(e, k)
    return e


def characters(m: MonicIdeal, S=None) -> list[Character]:
    """All characters of (O/m)^x trivial on S (default: the constants),
    trivial character first, then lexicographic in the exponents."""
    G = unit_group(m)
    S = frozenset(G.reduce(s) for s in (S if S is not None else G.constants()))
    e = quotient_exponent(G, S)
    ords = list(G.orders)
    Sgens = generators_of(S, G.mul, G.reduce(Poly(m.F, (1,))))
    Slogs = [G.log(s) for s in Sgens]
    out: list[Character] = []

    def rec(i: int, acc: list[int]):
        if i == len(ords):
            for lg in Slogs:
                if sum(k * l for k, l in zip(acc, lg)) % e:
                    return
            out.append(tuple(acc))
            return
        # chi(gen_i) lies in mu_e and has order dividing ord(gen_i)
        g = gcd(e, ords[i])
        for j in range(g):
            rec(i + 1, acc + [j * (e // g)])

    rec(0, [])
    out.sort(key=lambda ks: (any(ks), ks))
    chars = [Character(m, S, e, ks, i) for i, ks in enumerate(out)]
    index = len(G.elements()) // len(S)
    assert len(chars) == index, "wrong number of characters"
    return chars


def orthogonality_holds(chars: list[Character]) -> bool:
    if not chars:
        return True
    G = chars[0].group
    S = chars[0].S
    reps = _quotient_reps(G, S)
    for chi in chars:
        total = CycloNumber.of(chi.e, 0)
        for a in reps:
            total = total + chi(a)
        if chi.is_trivial() != (not total.is_zero()):
            return False
    return True


def _quotient_reps(G: UnitGroup, S: frozenset) -> list[Poly]:
    from .cyclo_field import coset_reps

    return coset_reps(G.elements(), S, G.mul)


# -- conductors -------------------------------------------------------------------------

def _lift_to(m: MonicIdeal, f: MonicIdeal, a: Poly) -> Poly:
    """A unit mod m congruent to a mod f, trivial away from primes of f."""
    mf = Poly(m.F, (1,))
    rest = m.gen
    for p, k in m.factors:
        if p.divides(f.gen):
            mf = mf * p ** k
            rest = rest.exact_div(p ** k)
    if rest.deg < 1:
        return a % m.gen
    if mf.deg < 1:
        return Poly(m.F, (1,))
    return crt([a % mf, Poly(m.F, (1,)) % rest], [mf, rest])


def factors_through(chi: Character, f: MonicIdeal) -> bool:
    G = chi.group
    if f.deg < 1:
        return chi.is_trivial()
    kernel = [u for u in G.elements() if (u % f.gen).is_one()]
    return all(chi.exponent_of(u) == 0 for u in kernel)


@lru_cache(maxsize=None)
def _conductor_cached(chi: Character) -> MonicIdeal:
    cands = [d for d in chi.modulus.divisors() if factors_through(chi, d)]
    best = min(cands, key=lambda d: (d.deg, d.gen.sort_key()))
    assert all(best.divides(d) for d in cands), "conductor is not unique"
    return best


def character_conductor(chi: Character) -> MonicIdeal:
    return _conductor_cached(chi)


def primitive_value(chi: Character, f: MonicIdeal, a: Poly) -> CycloNumber | None:
    """chi_prim(a) for the induced character modulo f; None if gcd(a, f) != 1."""
    if f.deg >= 1 and not a.gcd(f.gen).is_one():
        return None
    if f.deg < 1:
        return CycloNumber.of(chi.e, 1)
    return chi(_lift_to(chi.modulus, f, a))


# -- L-functions ---------------------------------------------------------------------------

def _poly_mul(a: list, b: list, e: int) -> list:
    out = [CycloNumber.of(e, 0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def _poly_eval(a: list, u, e: int) -> CycloNumber:
    acc = CycloNumber.of(e, 0)
    for c in reversed(a):
        acc = acc * u + c
    return acc


def _divide_one_minus_u(a: list, e: int) -> list:
    """a(u) / (1 - u), which must be exact."""
    # a = (1 - u) b  =>  b_0 = a_0, b_i = a_i + b_(i-1)
    b = []
    prev = CycloNumber.of(e, 0)
    for c in a[:-1]:
        prev = c + prev
        b.append(prev)
    if not (a[-1] + prev).is_zero():
        raise ArithmeticError("polynomial is not divisible by 1 - u")
    return b or [CycloNumber.of(e, 0)]


@dataclass
class LFunction:
    """L(u, chi) = numerator(u) / (denominator(u) * (1 - u)^inf_exponent)."""

    chi: Character
    modulus: MonicIdeal
    numerator: list
    denominator: list
    inf_exponent: int = 1

    def finite_part(self) -> tuple[list, list]:
        return self.numerator, self.denominator

    def value_at_zero(self) -> CycloNumber:
        e = self.chi.e
        num = self.numerator
        for _ in range(self.inf_exponent):
            num = _divide_one_minus_u(num, e)
        den = _poly_eval(self.denominator, 1, e)
        val = _poly_eval(num, 1, e)
        if not den.is_rational() or den.rational() == 0:
            raise ArithmeticError("pole at s = 0")
        return val * CycloNumber.of(e, 1 / den.rational())


def character_sums(chi: Character, modulus: MonicIdeal, value) -> list[CycloNumber]:
    """[sum over monic a of degree d, gcd(a, modulus) = 1, of value(a)] for d < deg modulus."""
    F = modulus.F
    out = []
    for d in range(max(modulus.deg, 1)):
        acc = CycloNumber.of(chi.e, 0)
        for a in monics(F, d):
            v = value(a)
            if v is not None:
                acc = acc + v
        out.append(acc)
    while len(out) > 1 and out[-1].is_zero():
        out.pop()
    return out


def l_function(chi: Character, modulus: MonicIdeal | None = None) -> LFunction:
    """The L-function of chi with Euler factors at primes of ``modulus``
    removed (default: the defining modulus of chi)."""
    m = modulus or chi.modulus
    e = chi.e
    q = m.q
    if chi.is_trivial():
        num = [CycloNumber.of(e, 1)]
        for p, _ in m.factors:
            num = _poly_mul(num, [CycloNumber.of(e, 1)] + [CycloNumber.of(e, 0)] * (p.deg - 1)
                            + [CycloNumber.of(e, -1)], e)
        den = [CycloNumber.of(e, 1), CycloNumber.of(e, -q)]
        return LFunction(chi, m, num, den)
    if m == chi.modulus:
        value = lambda a: chi(a) if a.gcd(m.gen).is_one() else None  # noqa: E731
    else:
        value = lambda a: primitive_value(chi, m, a)  # noqa: E731
    return LFunction(chi, m, character_sums(chi, m, value), [CycloNumber.of(e, 1)])


def l_value_at_zero(chi: Character) -> CycloNumber:
    return l_function(chi).value_at_zero()


# -- Stark formula --------------------------------------------------------------------------

@dataclass
class StarkRow:
    character: Character
    l_value: CycloNumber
    unit_side: CycloNumber

    @property
    def equal(self) -> bool:
        return self.l_value == self.unit_side

    def as_dict(self) -> dict:
        return {"character": self.character.index, "exponents": list(self.character.exps),
                "zeta_order": self.character.e, "lhs": self.l_value.to_json(),
                "rhs": self.unit_side.to_json(), "pass": self.equal}


def stark_check(m: MonicIdeal, S=None) -> list[StarkRow]:
    """L_m(0, chi) against (1/w) sum_sigma chi(sigma) v_inf(eps_m^sigma)
    for every character of Gal(H_m/k) trivial on S."""
    from .infinity_embed import v_inf_per_sigma

    vals = v_inf_per_sigma(m)
    w = m.q - 1
    rows = []
    for chi in characters(m, S):
        rhs = CycloNumber.of(chi.e, 0)
        for u, v in vals.items():
            rhs = rhs + chi(u) * CycloNumber.of(chi.e, v)
        rhs = rhs * CycloNumber.of(chi.e, Fraction(1, w))
        rows.append(StarkRow(chi, l_value_at_zero(chi), rhs))
    return rows


def subgroups_containing(m: MonicIdeal, base: frozenset) -> list[frozenset]:
    """All subgroups of (O/m)^x containing ``base``, ordered by size then content."""
    G = unit_group(m)
    start = G.subgroup(list(base)) if base else G.subgroup([])
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for H in frontier:
            for a in G.elements():
                if a in H:
                    continue
                H2 = G.subgroup(list(H) + [a])
                if H2 not in seen:
                    seen.add(H2)
                    nxt.append(H2)
        frontier = nxt
    return sorted(seen, key=lambda H: (len(H), sorted(x.sort_key() for x in H)))


# -- class numbers -------------------------------------------------------------------------------

@dataclass
class ClassNumberReport:
    h: int
    genus: int
    degree: int
    l_polynomial: list[Fraction]
    conductors: list[str]


def l_polynomial(m: MonicIdeal, S=None) -> ClassNumberReport:
    """L_K(u) = prod over nontrivial chi of the primitive finite part over
    (1 - u), for the fixed field K of S in k_m."""
    chars = characters(m, S)
    e = chars[0].e
    total = [CycloNumber.of(e, 1)]
    conds = []
    deg_sum = 0
    for chi in chars:
        f = chi.conductor
        conds.append(str(f))
        deg_sum += f.deg
        if chi.is_trivial():
            continue
        value = (lambda c, f: (lambda a: primitive_value(c, f, a)))(chi, f)
        fin = character_sums(chi, f, value)
        total = _poly_mul(total, _divide_one_minus_u(fin, e), e)
    coeffs = [c.rational() for c in total]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    n = len(chars)
    h = sum(coeffs)
    if h.denominator != 1 or h <= 0:
        raise ArithmeticError(f"class number {h} is not a positive integer")
    two_g = deg_sum - 2 * (n - 1)
    genus = two_g // 2
    return ClassNumberReport(int(h), genus, n, coeffs, conds)


def divisor_class_number(m: MonicIdeal, S=None) -> int:
    return l_polynomial(m, S).h


def functional_equation_holds(rep: ClassNumberReport, q: int) -> bool:
    """L(u) = q^g u^(2g) L(1/(q u)), i.e. a_(2g-i) = q^(g-i) a_i."""
    a = rep.l_polynomial
    g = rep.genus
    if len(a) - 1 != 2 * g:
        return False
    return all(a[2 * g - i] == Fraction(q) ** (g - i) * a[i] for i in range(2 * g + 1))
