"""Primes of k_n above a prime l of F_q[T], residues and valuations.

Since O = F_q[T][lambda] is the maximal order, the primes above l are
L_i = (l, g_i(lambda)) where Psi_n = prod g_i^e mod l.  For each L_i the
element tau_i = prod_{j != i} g_j(lambda) is a unit at L_i and lies in
every other L_j, and w_i = g_i(lambda) (or l when e = 1) is a
uniformizer.  With rho_i = w_i^(e-1) tau_i^e one has

    v_i(A) >= k  iff  l^k divides A * rho_i^k  (coefficientwise),

which gives valuations and unit residues using only multiplication and
exact division by powers of l, all modulo l^(k+1).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .base_arith.factor import factor_cz
from .base_arith.finite_field import FiniteField, GF
from .base_arith.ideals import MonicIdeal
from .base_arith.poly import Poly
from .cyclo_field import CycloElement, CycloField, SubfieldSpec


@lru_cache(maxsize=None)
def residue_field(q: int, ell: tuple) -> FiniteField:
    """F_q[T]/(ell) with codes given by base-q digits of the reduced poly."""
    return FiniteField.extension(GF(q), ell, name="T")


def poly_to_code(Fl: FiniteField, a: Poly, ell: Poly) -> int:
    r = a % ell
    code = 0
    for c in reversed(r.c):
        code = code * a.F.order + c
    return code


def code_to_poly(Fl: FiniteField, code: int, F: FiniteField) -> Poly:
    digits = []
    for _ in range(Fl.degree):
        code, d = divmod(code, F.order)
        digits.append(d)
    return Poly(F, digits)


@dataclass
class ResidueRing:
    """O/L = F_l[x]/(g) with elements as polynomials over F_l."""

    Fl: FiniteField
    g: Poly

    @property
    def degree(self) -> int:
        return self.g.deg

    @property
    def order(self) -> int:
        return self.Fl.order ** self.g.deg

    def red(self, a: Poly) -> Poly:
        return a % self.g

    def mul(self, a: Poly, b: Poly) -> Poly:
        return (a * b) % self.g

    def inv(self, a: Poly) -> Poly:
        return a.inv_mod(self.g)

    def div(self, a: Poly, b: Poly) -> Poly:
        return self.mul(a, self.inv(b))

    def pow(self, a: Poly, k: int) -> Poly:
        if k < 0:
            a, k = self.inv(a), -k
        return a.pow_mod(k, self.g)

    def const_code(self, a: Poly) -> int | None:
        """The F_l-code of a if it lies in F_l, else None."""
        a = self.red(a)
        if a.deg <= 0:
            return a[0]
        return None


@dataclass
class PrimeAbove:
    """One prime L = (l, g(lambda)) of a CycloField above l."""

    K: CycloField
    ell: Poly
    index: int
    g: Poly
    e: int
    ring: ResidueRing
    rho: CycloElement = field(repr=False)
    uniformizer: CycloElement = field(repr=False)

    @property
    def f(self) -> int:
        return self.g.deg

    def _mod_ell_power(self, A: np.ndarray, k: int) -> np.ndarray:
        C = self.K.C
        return C.trim(C.scalar_divmod(A, self.ell ** k)[1])

    def residue_of_array(self, A: np.ndarray) -> Poly:
        C = self.K.C
        Fl = self.ring.Fl
        rows = C.array_to_polys(A)
        codes = [poly_to_code(Fl, r, self.ell) for r in rows]
        return self.ring.red(Poly(Fl, codes, "x"))

    def _times_rho_power(self, A: np.ndarray, k: int, prec: int) -> np.ndarray:
        """A * rho^k modulo l^prec."""
        K = self.K
        acc = self._mod_ell_power(A, prec)
        base = self._mod_ell_power(self.rho.num, prec)
        while k:
            if k & 1:
                acc = self._mod_ell_power(K._mulred(acc, base), prec)
            k >>= 1
            if k:
                base = self._mod_ell_power(K._mulred(base, base), prec)
        return acc

    def _at_least(self, A: np.ndarray, k: int) -> bool:
        return self._times_rho_power(A, k, k).shape[0] == 0

    def val_array(self, A: np.ndarray) -> int:
        """v_L of a nonzero integral element given as an array."""
        if A.shape[0] == 0:
            raise ValueError("valuation of zero")
        if self.residue_of_array(A).c:
            return 0
        lo, hi = 1, 2
        while self._at_least(A, hi):
            lo, hi = hi, hi * 2
        # v >= lo and v < hi
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if self._at_least(A, mid):
                lo = mid
            else:
                hi = mid
        return lo

    def unit_part_residue(self, A: np.ndarray, r: int) -> Poly:
        """Residue of A * (rho/l)^r where r = v_L(A); nonzero."""
        if r == 0:
            return self.residue_of_array(A)
        C = self.K.C
        P = self._times_rho_power(A, r, r + 1)
        Q, R = C.scalar_divmod(P, self.ell ** r)
        assert not (R % C.p).any(), "valuation bookkeeping failed"
        return self.residue_of_array(C.trim(Q))

    def valuation(self, x: CycloElement) -> int:
        v = self.val_array(x.num)
        if x.den is not None:
            v -= self.val_array(x.den)
        return v

    def unit_residue(self, x: CycloElement, shift: int | None = None) -> Poly:
        """Residue of x at L when v_L(x) = 0 (the common powers of L in
        numerator and denominator are cancelled through rho)."""
        vn = self.val_array(x.num)
        vd = 0 if x.den is None else self.val_array(x.den)
        if vn != vd:
            raise ValueError(f"element has valuation {vn - vd} at this prime")
        rn = self.unit_part_residue(x.num, vn)
        if x.den is None:
            return rn
        rd = self.unit_part_residue(x.den, vd)
        return self.ring.div(rn, rd)

    def residue(self, x: CycloElement) -> Poly:
        return self.unit_residue(x)

    def root(self) -> Poly:
        """The image of lambda in O/L."""
        return self.ring.red(Poly(self.ring.Fl, (0, 1), "x"))


def _lift_codes(K: CycloField, Fl: FiniteField, g: Poly) -> CycloElement:
    polys = [code_to_poly(Fl, c, K.F) for c in g.c]
    return K.from_polys(polys)


_PRIME_CACHE: dict = {}


def primes_above(K: CycloField, ell: Poly) -> list[PrimeAbove]:
    """All primes of K above the monic irreducible ell, in a fixed order."""
    key = (id(K), ell.c)
    if key in _PRIME_CACHE:
        return _PRIME_CACHE[key]
    if not ell.is_monic():
        ell = ell.monic()
    Fl = residue_field(K.q, ell.c)
    psi = K.psi_x.coeffs()
    psi_l = Poly(Fl, [poly_to_code(Fl, c, ell) for c in psi], "x")
    fac = factor_cz(psi_l)
    es = {e for _, e in fac}
    assert len(es) == 1, "ramification indices differ across primes"
    e = es.pop()
    lifts = [_lift_codes(K, Fl, g) for g, _ in fac]
    ell_el = K.scalar(ell)
    out = []
    for i, (g, _) in enumerate(fac):
        tau = K.one()
        for j, h in enumerate(lifts):
            if j != i:
                tau = tau * h
        unif = lifts[i] if e > 1 else ell_el
        rho = (unif ** (e - 1)) * (tau ** e)
        P = PrimeAbove(K, ell, i, g, e, ResidueRing(Fl, g), rho, unif)
        out.append(P)
    for P in out:
        assert P.valuation(P.uniformizer) == 1, "uniformizer check failed"
    _PRIME_CACHE[key] = out
    return out


def prime_permutation(K: CycloField, primes: list[PrimeAbove], u: Poly) -> list[int]:
    """perm[i] = j where sigma_u(L_i) = L_j."""
    from .carlitz import carlitz_coeffs

    ell = primes[0].ell
    Fl = primes[0].ring.Fl
    coeffs = [poly_to_code(Fl, c, ell) for c in carlitz_coeffs(u % K.modulus.gen)]
    perm = []
    for Pi in primes:
        target = None
        for Pj in primes:
            R = Pj.ring
            r = Pj.root()
            # Phi_u(r) in O/L_j
            acc = Poly(Fl, (), "x")
            y = r
            for k, c in enumerate(coeffs):
                if k:
                    y = R.pow(y, K.q)
                if c:
                    acc = acc + y.scale(c)
            val = R.red(Pi.g.compose(R.red(acc)))
            if val.is_zero():
                target = Pj.index
                break
        assert target is not None, "no image prime found"
        perm.append(target)
    return perm


def inertia_group(K: CycloField, ell: Poly) -> frozenset:
    """Inertia subgroup at ell inside (O/n)^x."""
    n = K.modulus.gen
    rest = n
    while ell.divides(rest):
        rest = rest.exact_div(ell)
    return frozenset(u for u in K.units.elements() if rest.deg == 0 or (u % rest).is_one())


@dataclass
class SubfieldPrime:
    """A prime of a subfield above ell, given by an orbit of primes of k_n."""

    members: list[int]
    rep: PrimeAbove
    e: int  # ramification of the subfield prime over ell
    f: int  # residue degree over ell
    e_top: int  # ramification of the k_n prime over the subfield prime


def subfield_primes(Ksub: SubfieldSpec, ell: Poly) -> list[SubfieldPrime]:
    K = Ksub.field
    primes = primes_above(K, ell)
    parent = list(range(len(primes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for u in Ksub.gens:
        for i, j in enumerate(prime_permutation(K, primes, u)):
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbits: dict[int, list[int]] = {}
    for i in range(len(primes)):
        orbits.setdefault(find(i), []).append(i)
    I = inertia_group(K, ell)
    e_sub = len(I) // len(I & Ksub.S)
    g = len(orbits)
    f_sub = Ksub.degree // (g * e_sub)
    e_top = primes[0].e // e_sub
    return [SubfieldPrime(sorted(m), primes[min(m)], e_sub, f_sub, e_top)
            for _, m in sorted(orbits.items())]


def val_at_primes(x: CycloElement, Ksub: SubfieldSpec, ell: Poly) -> list[tuple[int, int]]:
    """[(f_lambda, v_lambda(x))] over the primes lambda of Ksub above ell,
    for x in Ksub and ell unramified in Ksub."""
    if x.is_zero():
        raise ValueError("valuation of zero")
    sps = subfield_primes(Ksub, ell)
    if sps[0].e != 1:
        raise ValueError(f"{ell} ramifies in the subfield")
    out = []
    for sp in sps:
        v = sp.rep.valuation(x)
        assert v % sp.e_top == 0
        out.append((sp.f, v // sp.e_top))
    return out
