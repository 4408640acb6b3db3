"""Carlitz cyclotomic fields k_n = k(lambda_n) and their subfields.

Elements are kept as fractions A/B with A, B in O = F_q[T][lambda_n]
(which is the full ring of integers, since the order is monogenic), each
stored as a (D, W, n) coefficient array in the power basis.  B = None
means B = 1.  Fractions avoid field inversion, which is the expensive
operation here; exact scalar denominators are produced on demand with a
norm computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .base_arith.bivariate import ctx
from .base_arith.ideals import MonicIdeal, UnitGroup, unit_group
from .base_arith.poly import Poly
from .base_arith.rational import RatFunc
from .carlitz import carlitz_coeffs, primitive_division_poly

_FIELDS: dict = {}


def cyclo_field(n: MonicIdeal) -> "CycloField":
    key = (n.q, n.gen.c)
    if key not in _FIELDS:
        _FIELDS[key] = CycloField(n)
    return _FIELDS[key]


def _add_arrays(A: np.ndarray, B: np.ndarray, sign: int = 1) -> np.ndarray:
    X = max(A.shape[0], B.shape[0])
    W = max(A.shape[1], B.shape[1])
    out = np.zeros((X, W, A.shape[2]), dtype=np.int64)
    out[: A.shape[0], : A.shape[1]] += A
    if sign > 0:
        out[: B.shape[0], : B.shape[1]] += B
    else:
        out[: B.shape[0], : B.shape[1]] -= B
    return out


class CycloField:
    """k_n = F_q(T)[x]/(Psi_n) with lambda_n the class of x."""

    def __init__(self, n: MonicIdeal):
        if n.deg < 1:
            raise ValueError("the modulus must be a proper ideal")
        self.modulus = n
        self.q = n.q
        self.F = n.F
        self.C = ctx(n.q)
        self.psi_x = primitive_division_poly(n)
        self.psi = self.psi_x.a
        self.degree = self.psi.shape[0] - 1
        self._frob_lambda: list[np.ndarray] = []
        self._power_cache: dict = {}
        self._lambda_cache: dict = {}

    def __repr__(self) -> str:
        return f"k_{self.modulus}"

    @cached_property
    def units(self) -> UnitGroup:
        return unit_group(self.modulus)

    # -- arrays -----------------------------------------------------------------
    def _mulred(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        C = self.C
        return C.trim(C.reduce(C.mul(A, B), self.psi))

    def _empty(self) -> np.ndarray:
        return np.zeros((0, 1, self.C.n), dtype=np.int64)

    def _one_array(self) -> np.ndarray:
        a = np.zeros((1, 1, self.C.n), dtype=np.int64)
        a[0, 0, 0] = 1
        return a

    # -- elements ------------------------------------------------------------------
    def element(self, num: np.ndarray, den: np.ndarray | None = None) -> "CycloElement":
        return CycloElement(self, self.C.trim(num), None if den is None else self.C.trim(den))

    def from_polys(self, coeffs) -> "CycloElement":
        """sum_j coeffs[j] lambda^j with coeffs in F_q[T]."""
        coeffs = list(coeffs)
        if len(coeffs) > self.degree:
            arr = self.C.polys_to_array(coeffs)
            return self.element(self.C.reduce(arr, self.psi))
        return self.element(self.C.polys_to_array(coeffs))

    def scalar(self, a) -> "CycloElement":
        """Embed an element of F_q[T] or F_q(T)."""
        if isinstance(a, int):
            a = Poly(self.F, (self.F.from_int(a),))
        if isinstance(a, Poly):
            return self.element(self.C.polys_to_array([a]))
        if isinstance(a, RatFunc):
            num = self.C.polys_to_array([a.num])
            if a.den.is_one():
                return self.element(num)
            return self.element(num, self.C.polys_to_array([a.den]))
        raise TypeError(f"cannot embed {type(a).__name__}")

    def one(self) -> "CycloElement":
        return self.element(self._one_array())

    def zero(self) -> "CycloElement":
        return self.element(self._empty())

    @cached_property
    def lam(self) -> "CycloElement":
        one = Poly(self.F, (1,))
        zero = Poly(self.F, ())
        if self.degree == 1:
            # lambda is the root of x + c
            c = self.C.array_to_polys(self.psi[:1])[0]
            return self.scalar(-c)
        return self.from_polys([zero, one])

    def _lambda_frob(self, i: int) -> np.ndarray:
        """lambda^(q^i) as an array."""
        while len(self._frob_lambda) <= i:
            if not self._frob_lambda:
                self._frob_lambda.append(self.lam.num)
            else:
                prev = self._frob_lambda[-1]
                y = prev
                acc = None
                # raise to the q-th power by repeated squaring
                k = self.q
                acc = self._one_array()
                while k:
                    if k & 1:
                        acc = self._mulred(acc, y)
                    k >>= 1
                    if k:
                        y = self._mulred(y, y)
                self._frob_lambda.append(acc)
        return self._frob_lambda[i]

    def phi_lambda(self, a: Poly) -> "CycloElement":
        """Phi_a(lambda_n), reducing a modulo n first."""
        a = a % self.modulus.gen
        key = a.c
        if key in self._lambda_cache:
            return self._lambda_cache[key]
        C = self.C
        acc = self._empty()
        for i, c in enumerate(carlitz_coeffs(a)):
            if c.is_zero():
                continue
            term = C.mul(C.polys_to_array([c]), self._lambda_frob(i))
            acc = _add_arrays(acc, term)
        el = self.element(C.reduce(acc, self.psi) if acc.shape[0] > self.degree else acc)
        if len(self._lambda_cache) < 20000:
            self._lambda_cache[key] = el
        return el

    def lambda_of(self, m: MonicIdeal) -> "CycloElement":
        """lambda_m = Phi_{n/m}(lambda_n) for m | n."""
        if not m.divides(self.modulus):
            raise ValueError(f"{m} does not divide {self.modulus}")
        if m.deg < 1:
            raise ValueError("lambda_of needs a proper ideal")
        return self.phi_lambda(self.modulus.gen.exact_div(m.gen))

    def carlitz(self, a: Poly, y: "CycloElement") -> "CycloElement":
        """Phi_a(y) for arbitrary y, by repeated q-th powers."""
        acc = self.zero()
        z = y
        for i, c in enumerate(carlitz_coeffs(a)):
            if i:
                z = z ** self.q
            if not c.is_zero():
                acc = acc + self.scalar(c) * z
        return acc

    # -- Galois action ---------------------------------------------------------------
    def _powers(self, u: Poly) -> list[np.ndarray]:
        key = u.c
        st = self._power_cache.get(key)
        if st is None:
            mu = self.phi_lambda(u).num
            st = [self._one_array()]
            for _ in range(1, self.degree):
                st.append(self._mulred(st[-1], mu))
            st = [s.astype(np.int8) for s in st]
            if len(self._power_cache) > 48:
                self._power_cache.pop(next(iter(self._power_cache)))
            self._power_cache[key] = st
        return st

    def _compose(self, A: np.ndarray, st: list[np.ndarray]) -> np.ndarray:
        C = self.C
        acc = self._empty()
        for j in range(A.shape[0]):
            row = A[j]
            if not row.any():
                continue
            acc = _add_arrays(acc, C.mul(row[None], st[j].astype(np.int64)))
        return acc

    def galois(self, u: Poly, x: "CycloElement") -> "CycloElement":
        """sigma_u(x) where sigma_u(lambda) = Phi_u(lambda)."""
        u = u % self.modulus.gen
        if not u.gcd(self.modulus.gen).is_one():
            raise ValueError(f"{u} is not a unit modulo {self.modulus}")
        if u.is_one():
            return x
        st = None
        num = x.num
        if num.shape[0] > 1:
            st = self._powers(u)
            num = self._compose(num, st)
        den = x.den
        if den is not None and den.shape[0] > 1:
            st = st or self._powers(u)
            den = self._compose(den, st)
        return self.element(num, den)

    def norm_over(self, H, x: "CycloElement") -> "CycloElement":
        """prod_{u in H} sigma_u(x), for a finite set H of residues."""
        acc = None
        for u in sorted(H, key=Poly.sort_key):
            y = self.galois(u, x)
            acc = y if acc is None else acc * y
        return acc

    def trace_over(self, H, x: "CycloElement") -> "CycloElement":
        acc = self.zero()
        for u in sorted(H, key=Poly.sort_key):
            acc = acc + self.galois(u, x)
        return acc

    def is_fixed(self, gens, x: "CycloElement") -> bool:
        return all(self.galois(u, x) == x for u in gens)

    # -- subgroups ---------------------------------------------------------------------
    def all_units(self) -> frozenset:
        return frozenset(self.units.elements())

    def restriction_kernel(self, m: MonicIdeal) -> frozenset:
        """Gal(k_n / k_m) for m | n."""
        return frozenset(u for u in self.units.elements() if (u % m.gen).is_one() or m.deg == 0)

    def pullback(self, m: MonicIdeal, S) -> frozenset:
        """Preimage in (O/n)^x of a subgroup S of (O/m)^x, m | n."""
        S = {s % m.gen for s in S}
        return frozenset(u for u in self.units.elements() if (u % m.gen) in S)


def generators_of(H, mul, one) -> list:
    """A small generating set of the finite group H (greedy)."""
    H = set(H)
    gens: list = []
    span = {one}
    for h in sorted(H, key=Poly.sort_key):
        if h in span:
            continue
        gens.append(h)
        frontier = list(span)
        span = set(span)
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = mul(a, g)
                    if b not in span:
                        span.add(b)
                        nxt.append(b)
            frontier = nxt
        if len(span) == len(H):
            break
    return gens


def coset_reps(G, H, mul) -> list:
    """Representatives of G/H, smallest in canonical order first."""
    seen = set()
    reps = []
    for g in sorted(G, key=Poly.sort_key):
        if g in seen:
            continue
        reps.append(g)
        for h in H:
            seen.add(mul(g, h))
    return reps


class CycloElement:
    """An element num/den of a CycloField."""

    __slots__ = ("K", "num", "den")

    def __init__(self, K: CycloField, num: np.ndarray, den: np.ndarray | None):
        self.K = K
        self.num = num
        if den is not None and den.shape[0] == 1 and den.shape[1] == 1 and den[0, 0, 0] == 1 and not den[0, 0, 1:].any():
            den = None
        if den is not None and den.shape[0] == 0:
            raise ZeroDivisionError("zero denominator in cyclotomic field")
        self.den = den

    # -- helpers -------------------------------------------------------------------
    def _chk(self, o) -> "CycloElement":
        if isinstance(o, CycloElement):
            if o.K is not self.K:
                raise ValueError("elements of different fields")
            return o
        return self.K.scalar(o)

    def is_zero(self) -> bool:
        return self.num.shape[0] == 0

    def is_integral_form(self) -> bool:
        return self.den is None

    # -- arithmetic -----------------------------------------------------------------------
    def __add__(self, o) -> "CycloElement":
        o = self._chk(o)
        K = self.K
        if self.den is None and o.den is None:
            return K.element(_add_arrays(self.num, o.num))
        if self.den is not None and o.den is not None and self.den.shape == o.den.shape and (self.den == o.den).all():
            return K.element(_add_arrays(self.num, o.num), self.den)
        a = self.num if o.den is None else K._mulred(self.num, o.den)
        b = o.num if self.den is None else K._mulred(o.num, self.den)
        return K.element(_add_arrays(a, b), _den_mul(K, self.den, o.den))

    __radd__ = __add__

    def __neg__(self) -> "CycloElement":
        return self.K.element(-self.num, self.den)

    def __sub__(self, o) -> "CycloElement":
        return self + (-self._chk(o))

    def __rsub__(self, o) -> "CycloElement":
        return self._chk(o) - self

    def __mul__(self, o) -> "CycloElement":
        o = self._chk(o)
        K = self.K
        return K.element(K._mulred(self.num, o.num), _den_mul(K, self.den, o.den))

    __rmul__ = __mul__

    def inverse(self) -> "CycloElement":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        den = self.den if self.den is not None else self.K._one_array()
        return self.K.element(den, self.num)

    def __truediv__(self, o) -> "CycloElement":
        return self * self._chk(o).inverse()

    def __rtruediv__(self, o) -> "CycloElement":
        return self._chk(o) * self.inverse()

    def __pow__(self, k: int) -> "CycloElement":
        if k < 0:
            return self.inverse() ** (-k)
        r = self.K.one()
        b = self
        while k:
            if k & 1:
                r = r * b
            k >>= 1
            if k:
                b = b * b
        return r

    def __eq__(self, o) -> bool:
        if not isinstance(o, CycloElement):
            try:
                o = self._chk(o)
            except TypeError:
                return NotImplemented
        K = self.K
        a = self.num if o.den is None else K._mulred(self.num, o.den)
        b = o.num if self.den is None else K._mulred(o.num, self.den)
        return a.shape == b.shape and bool((a == b).all())

    __hash__ = None

    def galois(self, u: Poly) -> "CycloElement":
        return self.K.galois(u, self)

    # -- exact forms ---------------------------------------------------------------------
    def with_scalar_den(self) -> tuple[list[Poly], Poly]:
        """Return (coeffs, d) with self = sum coeffs[j] lambda^j / d."""
        K = self.K
        C = K.C
        if self.den is None:
            return C.array_to_polys(self.num), Poly(K.F, (1,))
        if self.den.shape[0] == 1:
            d = C.array_to_polys(self.den)[0]
            return C.array_to_polys(self.num), d
        # multiply numerator and denominator by the other conjugates of den
        B = K.element(self.den)
        conj = K.one()
        for u in K.units.elements():
            if not u.is_one():
                conj = conj * K.galois(u, B)
        N = B * conj
        assert N.num.shape[0] <= 1, "norm did not land in F_q(T)"
        d = C.array_to_polys(N.num)[0]
        num = K._mulred(self.num, conj.num)
        return C.array_to_polys(num), d

    def coeffs(self) -> list[RatFunc]:
        num, d = self.with_scalar_den()
        return [RatFunc(c, d) for c in num]

    def is_integral(self) -> bool:
        return all(c.is_poly() for c in self.coeffs())

    def to_k(self) -> RatFunc:
        """The value in F_q(T), for an element of the base field."""
        cs = self.coeffs()
        if len(cs) > 1 and any(not c.is_zero() for c in cs[1:]):
            raise ValueError("element is not in F_q(T)")
        if not cs:
            return RatFunc(Poly(self.K.F, ()))
        return cs[0]

    def __str__(self) -> str:
        return format_element(self.coeffs())

    __repr__ = __str__


def _den_mul(K: CycloField, a, b):
    if a is None:
        return b
    if b is None:
        return a
    return K._mulred(a, b)


def format_element(coeffs: list[RatFunc], var: str = "L") -> str:
    """Render sum c_j L^j, highest power first; L stands for lambda_n."""
    terms = []
    for j in range(len(coeffs) - 1, -1, -1):
        c = coeffs[j]
        if c.is_zero():
            continue
        s = str(c)
        if j == 0:
            terms.append(s)
            continue
        mono = var if j == 1 else f"{var}^{j}"
        if s == "1":
            terms.append(mono)
        elif any(ch in s for ch in "+/"):
            terms.append(f"({s})*{mono}")
        else:
            terms.append(f"{s}*{mono}")
    return "+".join(terms) if terms else "0"


@dataclass(frozen=True)
class SubfieldSpec:
    """The fixed field of a subgroup S of Gal(k_n/k) = (O/n)^x."""

    field: CycloField
    S: frozenset

    @classmethod
    def from_modulus(cls, field: CycloField, m: MonicIdeal, S_m) -> "SubfieldSpec":
        """The fixed field of S_m inside k_m, viewed inside k_n."""
        return cls(field, field.pullback(m, S_m))

    @classmethod
    def H(cls, field: CycloField, m: MonicIdeal | None = None) -> "SubfieldSpec":
        """H_m, the fixed field of F_q^x inside k_m."""
        m = m or field.modulus
        consts = [Poly(field.F, (c,)) for c in range(1, field.q)]
        return cls.from_modulus(field, m, consts)

    @property
    def degree(self) -> int:
        return self.field.degree // len(self.S)

    @cached_property
    def gens(self) -> list[Poly]:
        K = self.field
        one = Poly(K.F, (1,)) % K.modulus.gen
        return generators_of(self.S, K.units.mul, one)

    def contains(self, x: CycloElement) -> bool:
        return self.field.is_fixed(self.gens, x)

    def galois_group_reps(self) -> list[Poly]:
        """Representatives of Gal(K/k) = (O/n)^x / S."""
        K = self.field
        return coset_reps(K.units.elements(), self.S, K.units.mul)

    def norm(self, x: CycloElement, source: frozenset | None = None) -> CycloElement:
        """Norm from the fixed field of ``source`` (default: all of k_n)
        down to this subfield."""
        K = self.field
        if source is None:
            return K.norm_over(self.S, x)
        reps = coset_reps(self.S, source, K.units.mul)
        return K.norm_over(reps, x)

    def norm_to_k(self, x: CycloElement) -> CycloElement:
        """N_{K/k}(x) for x in this subfield."""
        return self.field.norm_over(self.galois_group_reps(), x)

    def __hash__(self):
        return hash((self.field.modulus.gen, len(self.S)))


def norm_to(S: SubfieldSpec, x: CycloElement, source: frozenset | None = None) -> CycloElement:
    y = S.norm(x, source)
    if not S.contains(y):
        raise AssertionError("norm is not fixed by the subgroup")
    return y


def lambda_of(m: MonicIdeal, n: MonicIdeal | None = None) -> CycloElement:
    return cyclo_field(n or m).lambda_of(m)


def galois_apply(u: Poly, x: CycloElement) -> CycloElement:
    return x.K.galois(u, x)
