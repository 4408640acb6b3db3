"""The Euler system of torsion points, Kolyvagin derivatives and the
finite maps psi_l, phi_l.

Everything lives in one ambient field k_n with n = m * (product of the
auxiliary primes in play).  Gal(k_n/k) = (O/n)^x, and every field below is
the fixed field of an explicit subgroup:

    K      : u mod m in S
    K(a)   : additionally u mod l in F_q^x ((O/l)^x)^M for each l | a
    H_{ma} : u mod ma in F_q^x
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .base_arith.ideals import MonicIdeal, crt, discrete_log, unit_group
from .base_arith.intmath import factorint
from .base_arith.poly import Poly, all_polys_below
from .cyclo_field import CycloElement, SubfieldSpec, coset_reps, cyclo_field, generators_of
from .cyclo_primes import (
    PrimeAbove,
    poly_to_code,
    prime_permutation,
    primes_above,
    subfield_primes,
)
from .report import Check


class ConfigError(ValueError):
    """An inconsistent Euler-system configuration."""


class KappaError(ArithmeticError):
    """The derivative class could not be built (should not happen)."""


# -- configuration ------------------------------------------------------------------

@dataclass(frozen=True)
class EulerConfig:
    """K is the fixed field of S inside k_m; alpha uses the twist by g."""

    m: MonicIdeal
    S: frozenset
    M: int
    p: int
    g: MonicIdeal

    @property
    def q(self) -> int:
        return self.m.q

    @property
    def K_degree(self) -> int:
        return unit_group(self.m).order // len(self.S)

    @property
    def mu_p_in_k(self) -> bool:
        return (self.q - 1) % self.p == 0

    def validate(self) -> "EulerConfig":
        if self.m.deg < 1:
            raise ConfigError("m must be a proper ideal")
        f = factorint(self.p)
        if len(f) != 1 or f.get(self.p) != 1:
            raise ConfigError(f"p = {self.p} is not prime")
        Mf = factorint(self.M) if self.M > 1 else {}
        if self.M < 1 or any(r != self.p for r in Mf):
            raise ConfigError(f"M = {self.M} is not a power of p = {self.p}")
        if self.q % self.p == 0:
            raise ConfigError("p must differ from the characteristic")
        if self.K_degree % self.p == 0:
            raise ConfigError("p divides [K:k]")
        if not self.m.coprime(self.g):
            raise ConfigError("m and g must be coprime")
        G = unit_group(self.m)
        if not G.constants() <= self.S:
            raise ConfigError("S must contain the constants")
        if G.subgroup(list(self.S)) != self.S:
            raise ConfigError("S is not a subgroup")
        return self

    def K(self) -> SubfieldSpec:
        field = cyclo_field(self.m)
        return SubfieldSpec(field, field.pullback(self.m, self.S))

    def describe(self) -> dict:
        return {"q": self.q, "m": str(self.m), "subgroup": sorted(str(s) for s in self.S),
                "M": self.M, "p": self.p, "g": str(self.g)}


def make_config(m: MonicIdeal, M: int, g: MonicIdeal, extra_gens=(), p: int | None = None) -> EulerConfig:
    G = unit_group(m)
    S = G.subgroup(list(G.constants()) + [G.reduce(x) for x in extra_gens])
    if p is None:
        f = factorint(M) if M > 1 else {2: 0}
        if len(f) != 1:
            raise ConfigError(f"M = {M} is not a prime power")
        p = next(iter(f))
    return EulerConfig(m, S, M, p, g).validate()


def in_curly_L(ell: MonicIdeal, cfg: EulerConfig) -> bool:
    """Whether ell splits completely in K_M / k."""
    if not ell.is_prime():
        raise ValueError(f"{ell} is not prime")
    if ell.divides(cfg.m) or ell.divides(cfg.g):
        raise ValueError(f"{ell} divides m g")
    if (ell.gen % cfg.m.gen) not in cfg.S:
        return False
    need = cfg.M * (cfg.q - 1) if cfg.mu_p_in_k else cfg.M
    return (ell.norm - 1) % need == 0


def curly_L_primes(cfg: EulerConfig, max_deg: int) -> list[MonicIdeal]:
    from .base_arith.factor import monic_irreducibles

    out = []
    for d in range(1, max_deg + 1):
        for p in monic_irreducibles(cfg.m.F, d):
            ell = MonicIdeal(p)
            if ell.divides(cfg.m) or ell.divides(cfg.g):
                continue
            if in_curly_L(ell, cfg):
                out.append(ell)
    return out


def primitive_root(ell: MonicIdeal) -> Poly:
    """Smallest-degree, lexicographically least generator of (O/ell)^x."""
    G = unit_group(ell)
    N = G.order
    cands = sorted((a for a in all_polys_below(ell.F, ell.deg) if not a.is_zero()),
                   key=lambda a: (a.deg, a.sort_key()))
    for a in cands:
        if G.element_order(a) == N:
            return a
    raise AssertionError("no primitive root")


# -- group ring ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GroupRingElem:
    """sum_v c_v sigma^v in Z[prod Z/M], v an exponent vector."""

    M: int
    rank: int
    coeffs: tuple  # sorted ((v, c), ...) with c != 0

    @classmethod
    def make(cls, M: int, rank: int, d: dict) -> "GroupRingElem":
        items = tuple(sorted((tuple(v), c) for v, c in d.items() if c))
        return cls(M, rank, items)

    @classmethod
    def one(cls, M: int, rank: int) -> "GroupRingElem":
        return cls.make(M, rank, {(0,) * rank: 1})

    @classmethod
    def scalar(cls, M: int, rank: int, c: int) -> "GroupRingElem":
        return cls.make(M, rank, {(0,) * rank: c})

    @classmethod
    def sigma(cls, M: int, rank: int, j: int, k: int = 1) -> "GroupRingElem":
        v = [0] * rank
        v[j] = k % M
        return cls.make(M, rank, {tuple(v): 1})

    def as_dict(self) -> dict:
        return dict(self.coeffs)

    def __add__(self, o: "GroupRingElem") -> "GroupRingElem":
        d = self.as_dict()
        for v, c in o.coeffs:
            d[v] = d.get(v, 0) + c
        return GroupRingElem.make(self.M, self.rank, d)

    def __neg__(self) -> "GroupRingElem":
        return GroupRingElem.make(self.M, self.rank, {v: -c for v, c in self.coeffs})

    def __sub__(self, o: "GroupRingElem") -> "GroupRingElem":
        return self + (-o)

    def __mul__(self, o) -> "GroupRingElem":
        if isinstance(o, int):
            return GroupRingElem.make(self.M, self.rank, {v: c * o for v, c in self.coeffs})
        d: dict = {}
        for v, a in self.coeffs:
            for w, b in o.coeffs:
                u = tuple((x + y) % self.M for x, y in zip(v, w))
                d[u] = d.get(u, 0) + a * b
        return GroupRingElem.make(self.M, self.rank, d)

    __rmul__ = __mul__

    def support(self) -> int:
        return len(self.coeffs)

    def mod(self, n: int) -> "GroupRingElem":
        return GroupRingElem.make(self.M, self.rank, {v: c % n for v, c in self.coeffs})

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for v, c in self.coeffs:
            mono = "*".join(f"s{j}^{k}" if k > 1 else f"s{j}" for j, k in enumerate(v) if k)
            if not mono:
                parts.append(str(c))
            else:
                parts.append(mono if c == 1 else f"{c}*{mono}")
        return " + ".join(parts)


def norm_element(M: int, rank: int, j: int) -> GroupRingElem:
    return GroupRingElem.make(M, rank, {tuple(k if i == j else 0 for i in range(rank)): 1 for k in range(M)})


def kolyvagin_D(M: int, rank: int = 1, which=None) -> GroupRingElem:
    """D_a = prod_j D_j with D_j = sum_i i sigma_j^i, over the listed factors."""
    which = range(rank) if which is None else which
    D = GroupRingElem.one(M, rank)
    for j in which:
        Dj = GroupRingElem.make(M, rank, {tuple(i if t == j else 0 for t in range(rank)): i for i in range(M)})
        D = D * Dj
    return D


def telescoping_holds(M: int) -> bool:
    """(sigma - 1) D = M - N in Z[Z/M]."""
    s = GroupRingElem.sigma(M, 1, 0)
    D = kolyvagin_D(M)
    lhs = (s - GroupRingElem.one(M, 1)) * D
    rhs = GroupRingElem.scalar(M, 1, M) - norm_element(M, 1, 0)
    return lhs == rhs


# -- reports ----------------------------------------------------------------------------------

def digest(x: CycloElement) -> str:
    """A short canonical fingerprint of an element (for reports)."""
    coeffs = x.coeffs()
    text = ";".join(str(c) for c in coeffs)
    return hashlib.sha256(text.encode()).hexdigest()[:16]


@dataclass
class KolyvaginClass:
    """kappa = beta * b^M with beta = alpha(a)^(D_a) and kappa fixed by Gal(k_n/K)."""

    a: MonicIdeal
    representative: CycloElement
    beta: CycloElement = field(repr=False)
    witness: CycloElement = field(repr=False)
    M: int = 1
    cocycle: dict = field(default_factory=dict, repr=False)

    def verify(self, system: "EulerSystem") -> bool:
        """kappa / beta is the M-th power of a witness in K(a), kappa lies in K."""
        ok_power = self.representative == self.beta * self.witness ** self.M
        ok_fixed = system.K.contains(self.representative)
        ok_witness = system.K_of(self.a).contains(self.witness)
        return ok_power and ok_fixed and ok_witness


# -- the system -----------------------------------------------------------------------------------

class EulerSystem:
    """alpha(a) = N_{H_{ma}/K(a)}(lambda_{ma}^(N(g) - sigma_g)) and its derived data."""

    def __init__(self, cfg: EulerConfig, ells):
        self.cfg = cfg.validate()
        self.ells = sorted({MonicIdeal(e.gen) for e in ells})
        for ell in self.ells:
            if not in_curly_L(ell, cfg):
                raise ConfigError(f"{ell} is not in the prime set")
        n = cfg.m
        for ell in self.ells:
            n = n * ell
        self.n = n
        self.field = cyclo_field(n)
        self.U = self.field.units
        self.q = cfg.q
        self._alpha: dict = {}
        self._kappa: dict = {}
        self._gal: dict = {}

    # -- bookkeeping ---------------------------------------------------------------
    def one_unit(self) -> Poly:
        return self.U.reduce(Poly(self.field.F, (1,)))

    def ideal_of(self, ells) -> MonicIdeal:
        a = MonicIdeal(Poly(self.field.F, (1,)))
        for ell in ells:
            a = a * ell
        return a

    def primes_of(self, a: MonicIdeal) -> list[MonicIdeal]:
        out = [ell for ell in self.ells if ell.divides(a)]
        if self.ideal_of(out) != a:
            raise ValueError(f"{a} is not a product of distinct auxiliary primes")
        return out

    @cached_property
    def K(self) -> SubfieldSpec:
        m = self.cfg.m
        return SubfieldSpec(self.field, self.field.pullback(m, self.cfg.S))

    def _power_classes(self, ell: MonicIdeal) -> frozenset:
        """F_q^x ((O/l)^x)^M inside (O/l)^x."""
        G = unit_group(ell)
        gens = [G.pow(x, self.cfg.M) for x in G.elements()] + list(G.constants())
        return G.subgroup(gens)

    def gal_K_of(self, a: MonicIdeal) -> frozenset:
        """Gal(k_n / K(a))."""
        key = a.gen.c
        if key not in self._gal:
            conds = [(ell, self._power_classes(ell)) for ell in self.primes_of(a)]
            out = frozenset(u for u in self.K.S
                            if all((u % ell.gen) in P for ell, P in conds))
            self._gal[key] = out
        return self._gal[key]

    def K_of(self, a: MonicIdeal) -> SubfieldSpec:
        return SubfieldSpec(self.field, self.gal_K_of(a))

    def _lift(self, residues: list[tuple[Poly, MonicIdeal]]) -> Poly:
        """The unit mod n with prescribed residues at the listed coprime
        factors and 1 on the rest of n."""
        rest = self.n.gen
        mods, vals = [], []
        for r, I in residues:
            mods.append(I.gen)
            vals.append(r % I.gen)
            rest = rest.exact_div(I.gen)
        if rest.deg >= 1:
            mods.append(rest)
            vals.append(Poly(self.field.F, (1,)))
        if len(mods) == 1:
            return vals[0] % self.n.gen
        return crt(vals, mods)

    @cached_property
    def roots(self) -> dict:
        return {ell.gen.c: primitive_root(ell) for ell in self.ells}

    def sigma(self, ell: MonicIdeal) -> Poly:
        """The chosen generator sigma_l of Gal(K(l)/K)."""
        return self._lift([(self.roots[ell.gen.c], ell)])

    def sigma_power(self, exps: dict) -> Poly:
        u = self.one_unit()
        for ell, k in exps.items():
            u = self.U.mul(u, self.U.pow(self.sigma(ell), k % self.cfg.M))
        return u

    def frobenius(self, ell: MonicIdeal, inverse: bool = False) -> Poly:
        """A lift of Fr(l) acting on fields of conductor prime to l."""
        rest = self.n.gen
        while ell.gen.divides(rest):
            rest = rest.exact_div(ell.gen)
        r = ell.gen % rest if rest.deg >= 1 else Poly(self.field.F, (1,))
        if inverse and rest.deg >= 1:
            r = r.inv_mod(rest)
        if rest.deg < 1:
            return self.one_unit()
        ellpart = self.n.gen.exact_div(rest)
        return crt([r, Poly(self.field.F, (1,)) % ellpart], [rest, ellpart])

    # -- alpha -----------------------------------------------------------------------
    def alpha(self, a: MonicIdeal) -> CycloElement:
        key = a.gen.c
        if key in self._alpha:
            return self._alpha[key]
        self.primes_of(a)
        K = self.field
        cfg = self.cfg
        ma = cfg.m * a
        co = self.n.gen.exact_div(ma.gen)
        stab = frozenset(u for u in self.U.elements() if (u % ma.gen).deg <= 0)
        G = self.gal_K_of(a)
        reps = coset_reps(G, stab & G, self.U.mul)
        Ng = cfg.g.norm
        gg = cfg.g.gen
        num = K.one()
        den = K.one()
        for u in reps:
            # sigma_u(lambda_ma) = Phi_{u n/ma}(lambda_n)
            num = num * K.phi_lambda(u * co) ** Ng
            den = den * K.phi_lambda(u * gg * co)
        val = num / den
        self._alpha[key] = val
        return val

    # -- axioms ---------------------------------------------------------------------
    def verify_E1(self, a: MonicIdeal) -> Check:
        x = self.alpha(a)
        Ka = self.K_of(a)
        ok = Ka.contains(x)
        return Check(f"E1[{a}]", "alpha fixed by Gal(k_n/K(a))", f"degree {Ka.degree}", ok)

    def verify_E2(self, a: MonicIdeal) -> Check:
        x = self.alpha(a)
        Ka = self.K_of(a)
        N = Ka.norm_to_k(x).to_k()
        unit_norm = N.num.deg == 0 and N.den.deg == 0
        integral = x.is_integral()
        if a.deg == 0:
            return Check(f"E2[{a}]", f"norm {N}", "vacuous for a = 1", True)
        return Check(f"E2[{a}]", f"norm {N}, integral={integral}", "norm in F_q^x", unit_norm and integral)

    def verify_E3(self, a: MonicIdeal, ell: MonicIdeal) -> Check:
        al = self.alpha(a * ell)
        G_big = self.gal_K_of(a)
        G_small = self.gal_K_of(a * ell)
        reps = coset_reps(G_big, G_small, self.U.mul)
        lhs = self.field.norm_over(reps, al)
        x = self.alpha(a)
        rhs = x / self.field.galois(self.frobenius(ell, inverse=True), x)
        return Check(f"E3[{a},{ell}]", digest(lhs), digest(rhs), lhs == rhs)

    def verify_E4(self, a: MonicIdeal, ell: MonicIdeal) -> Check:
        al = self.alpha(a * ell)
        base = self.field.galois(self.frobenius(ell, inverse=True), self.alpha(a))
        d = (ell.norm - 1) // self.cfg.M
        lhs_res, rhs_res, ok = [], [], True
        for P in primes_above(self.field, ell.gen):
            r1 = P.unit_residue(al)
            r2 = P.ring.pow(P.unit_residue(base), d)
            lhs_res.append(str(r1))
            rhs_res.append(str(r2))
            ok = ok and r1 == r2
        return Check(f"E4[{a},{ell}]", ",".join(lhs_res), ",".join(rhs_res), ok)

    # -- Kolyvagin derivative ------------------------------------------------------------
    def apply_group_ring(self, x: CycloElement, D: GroupRingElem, ells) -> CycloElement:
        out = self.field.one()
        for v, c in D.coeffs:
            u = self.sigma_power(dict(zip(ells, v)))
            y = self.field.galois(u, x)
            out = out * (y ** c if c > 0 else y.inverse() ** (-c))
        return out

    def beta(self, a: MonicIdeal) -> CycloElement:
        ells = self.primes_of(a)
        return self.apply_group_ring(self.alpha(a), kolyvagin_D(self.cfg.M, len(ells)), ells)

    def frob_exponents(self, ell: MonicIdeal, b: MonicIdeal) -> dict:
        """Fr(l)^-1 in Gal(K(b)/K) as sigma-exponents over the primes of b."""
        out = {}
        for lj in self.primes_of(b):
            G = unit_group(lj)
            r = self.roots[lj.gen.c]
            target = ell.gen.inv_mod(lj.gen)
            out[lj] = _dlog(G, r, target) % self.cfg.M
        u = self.sigma_power(out)
        fr = self.frobenius(ell, inverse=True)
        assert self.U.mul(self.U.inv(u), fr) in self.gal_K_of(b), "Frobenius decomposition failed"
        return out

    def _gamma_gen(self, a: MonicIdeal, ell: MonicIdeal) -> CycloElement:
        """gamma_a(sigma_l) with gamma^M = beta_a^(sigma_l - 1)."""
        b = MonicIdeal(a.gen.exact_div(ell.gen))
        rest = self.primes_of(b)
        base = self.apply_group_ring(self.alpha(a), kolyvagin_D(self.cfg.M, len(rest)), rest)
        if b.deg == 0:
            return base
        return base * self.gamma(b, self.frob_exponents(ell, b))

    def gamma(self, a: MonicIdeal, exps: dict) -> CycloElement:
        """gamma_a(prod sigma_j^(e_j)) from the cocycle rule."""
        key = (a.gen.c, tuple(sorted((e.gen.c, k % self.cfg.M) for e, k in exps.items())))
        cache = self._kappa.setdefault("gamma", {})
        if key in cache:
            return cache[key]
        K = self.field
        out = K.one()
        shift = self.one_unit()
        for ell in self.primes_of(a):
            k = exps.get(ell, 0) % self.cfg.M
            if not k:
                continue
            g1 = self._gamma_gen(a, ell)
            s = self.sigma(ell)
            acc = K.one()
            for i in range(k):
                acc = acc * K.galois(self.U.pow(s, i), g1)
            out = out * K.galois(shift, acc)
            shift = self.U.mul(shift, self.U.pow(s, k))
        cache[key] = out
        return out

    def check_cocycle(self, a: MonicIdeal) -> list[Check]:
        K = self.field
        ells = self.primes_of(a)
        beta = self.beta(a)
        M = self.cfg.M
        out = []
        for ell in ells:
            g1 = self._gamma_gen(a, ell)
            s = self.sigma(ell)
            lhs = g1 ** M
            rhs = K.galois(s, beta) / beta
            out.append(Check(f"gamma^M[{a},{ell}]", digest(lhs), digest(rhs), lhs == rhs))
            N = K.norm_over([self.U.pow(s, i) for i in range(M)], g1)
            out.append(Check(f"gamma-norm[{a},{ell}]", str(N), "1", N == K.one()))
        for i, l1 in enumerate(ells):
            for l2 in ells[i + 1:]:
                g1, g2 = self._gamma_gen(a, l1), self._gamma_gen(a, l2)
                s1, s2 = self.sigma(l1), self.sigma(l2)
                lhs = g1 * K.galois(s1, g2)
                rhs = g2 * K.galois(s2, g1)
                out.append(Check(f"gamma-commute[{a},{l1},{l2}]", digest(lhs), digest(rhs), lhs == rhs))
        return out

    def kappa(self, a: MonicIdeal) -> KolyvaginClass:
        key = a.gen.c
        cache = self._kappa.setdefault("kappa", {})
        if key in cache:
            return cache[key]
        K = self.field
        M = self.cfg.M
        ells = self.primes_of(a)
        if not ells:
            x = self.alpha(a)
            cls = KolyvaginClass(a, x, x, K.one(), M)
            cache[key] = cls
            return cls
        if M == 1:
            # every class is trivial; keep alpha(a) itself, which lies in K(a) = K
            x = self.alpha(a)
            cls = KolyvaginClass(a, x, K.one(), x, 1)
            cache[key] = cls
            return cls
        if self.cfg.mu_p_in_k:
            raise KappaError("M-th roots of unity in F_q make the cocycle non-unique")
        bad = [c for c in self.check_cocycle(a) if not c.passed]
        if bad:
            raise KappaError(f"cocycle check failed: {bad[0].name}")
        beta = self.beta(a)
        Ga = list(product(range(M), repeat=len(ells)))
        gam = {v: self.gamma(a, dict(zip(ells, v))) for v in Ga}
        Ka = self.K_of(a)
        for j in range(1, K.degree + 1):
            theta = K.trace_over(Ka.S, K.lam ** j)
            if theta.is_zero():
                continue
            b = K.zero()
            for v in Ga:
                u = self.sigma_power(dict(zip(ells, v)))
                b = b + gam[v] * K.galois(u, theta)
            if not b.is_zero():
                break
        else:
            raise KappaError("no theta gives a nonzero resolvent")
        kappa = beta * b ** M
        kappa = _normalize(kappa)
        cls = KolyvaginClass(a, kappa, beta, b, M, gam)
        if not cls.verify(self):
            raise KappaError("derivative class failed its certificate")
        cache[key] = cls
        return cls

    # -- primes above l in K and the maps psi, phi -------------------------------------------
    def K_primes(self, ell: MonicIdeal, ambient_field=None):
        """Primes of K above l as representatives in the ambient field,
        labelled by Gal(K/k): entry j is sigma_{reps[j]}(lambda_0)."""
        Kf = self.K
        sps = subfield_primes(Kf, ell.gen)
        if sps[0].e != 1 or sps[0].f != 1:
            raise ValueError(f"{ell} does not split completely in K")
        prs = primes_above(self.field, ell.gen)
        reps = Kf.galois_group_reps()
        orbit_of = {}
        for i, sp in enumerate(sps):
            for j in sp.members:
                orbit_of[j] = i
        base = sps[0].rep.index
        labelled = []
        for u in reps:
            perm = prime_permutation(self.field, prs, u)
            labelled.append(sps[orbit_of[perm[base]]])
        assert len({id(s) for s in labelled}) == len(sps)
        return reps, labelled

    def residue_code(self, P: PrimeAbove, x: CycloElement) -> int:
        """The residue of a unit at P, which must lie in F_l."""
        r = P.unit_residue(x)
        c = P.ring.const_code(r)
        if c is None:
            raise ValueError("residue does not lie in O_k / l")
        return c

    def _dlog_l(self, ell: MonicIdeal, code: int) -> int:
        from .cyclo_primes import residue_field

        Fl = residue_field(self.q, ell.gen.c)
        r = poly_to_code(Fl, self.roots[ell.gen.c], ell.gen)
        return Fl.log[code] * _inv_mod(Fl.log[r], Fl.order - 1) % (Fl.order - 1)

    def psi(self, z: CycloElement, ell: MonicIdeal) -> tuple[int, ...]:
        """psi_l(z) for z in K(l): coordinates in (Z/M) over the primes of K above l."""
        M = self.cfg.M
        d = (ell.norm - 1) // M
        w = z / self.field.galois(self.sigma(ell), z)
        out = []
        for sp in self.K_primes(ell)[1]:
            k = self._dlog_l(ell, self.residue_code(sp.rep, w))
            assert k % d == 0, "z^(1-sigma) is not a d-th power"
            out.append((k // d) % M)
        return tuple(out)

    def unit_coordinates(self, y: CycloElement, ell: MonicIdeal) -> tuple[int, ...]:
        """dlog of the residue of y / l^(v_lambda(y)) in F_l^x / M, per prime of K."""
        M = self.cfg.M
        out = []
        ell_el = self.field.scalar(ell.gen)
        for sp in self.K_primes(ell)[1]:
            v = sp.rep.valuation(y) // sp.e_top
            yy = y / ell_el ** v if v > 0 else (y * ell_el ** (-v) if v < 0 else y)
            out.append(self._dlog_l(ell, self.residue_code(sp.rep, yy)) % M)
        return tuple(out)

    def uniformizer(self, ell: MonicIdeal) -> CycloElement:
        """N_{k_l/H(l)}(lambda_l): uniformizer at every prime of K(l) above l."""
        K = self.field
        P = self._power_classes(ell)
        co = self.n.gen.exact_div(ell.gen)
        out = K.one()
        for u in sorted(P, key=Poly.sort_key):
            out = out * K.phi_lambda(u * co)
        return out

    def pi_classes(self, ell: MonicIdeal) -> tuple[int, ...]:
        """c_lambda = psi_l(pi)_lambda for a uniformizer pi; units mod M."""
        return self.psi(self.uniformizer(ell), ell)

    def ideal_vector(self, y: CycloElement, ell: MonicIdeal) -> tuple[int, ...]:
        """[y]_l in I_l / M I_l, for y in K."""
        M = self.cfg.M
        out = []
        for sp in self.K_primes(ell)[1]:
            v = sp.rep.valuation(y)
            assert v % sp.e_top == 0
            out.append((v // sp.e_top) % M)
        return tuple(out)

    def phi_hat(self, y: CycloElement, ell: MonicIdeal) -> tuple[int, ...]:
        """The map sending the class of pi^(1-sigma)^(1/d) at lambda to lambda."""
        if any(self.ideal_vector(y, ell)):
            raise ValueError("phi needs [y]_l = 0")
        M = self.cfg.M
        cs = self.pi_classes(ell)
        ys = self.unit_coordinates(y, ell)
        return tuple(a * _inv_mod(c, M) % M for a, c in zip(ys, cs))

    def phi(self, y: CycloElement, ell: MonicIdeal) -> tuple[int, ...]:
        """phi_l, normalized so that phi_l(psi_l(x)) = [N_{K(l)/K} x]_l."""
        return self.phi_hat(y, ell)

    def phi_of_coordinates(self, coords: tuple[int, ...], ell: MonicIdeal, sign: int = 1) -> tuple[int, ...]:
        M = self.cfg.M
        cs = self.pi_classes(ell)
        return tuple(sign * a * _inv_mod(c, M) % M for a, c in zip(coords, cs))

    def norm_to_K(self, x: CycloElement, ell: MonicIdeal) -> CycloElement:
        reps = coset_reps(self.K.S, self.gal_K_of(ell), self.U.mul)
        return self.field.norm_over(reps, x)

    def verify_norm_residue(self, x: CycloElement, ell: MonicIdeal, sign: int = 1) -> Check:
        lhs = self.phi_of_coordinates(self.psi(x, ell), ell, sign)
        rhs = self.ideal_vector(self.norm_to_K(x, ell), ell)
        return Check(f"norm-residue[{ell}]", str(list(lhs)), str(list(rhs)), lhs == rhs)

    def verify_kappa_residue(self, a: MonicIdeal, ell: MonicIdeal) -> Check:
        kap = self.kappa(a).representative
        lhs = self.ideal_vector(kap, ell)
        if ell.divides(a):
            prev = self.kappa(MonicIdeal(a.gen.exact_div(ell.gen))).representative
            rhs = self.phi(prev, ell)
        else:
            rhs = (0,) * len(lhs)
        return Check(f"kappa-residue[{a},{ell}]", str(list(lhs)), str(list(rhs)), lhs == rhs)

    def verify_kappa_residue_elsewhere(self, a: MonicIdeal) -> Check:
        """[kappa(a)]_l' = 0 for every prime l' outside m g a.

        Only primes dividing N_{K/k}(kappa) can contribute, so checking
        those is a complete verification."""
        from .base_arith.factor import factor
        from .cyclo_primes import val_at_primes

        kap = self.kappa(a).representative
        N = self.K.norm_to_k(kap).to_k()
        support = [p for p, _ in factor(N.num.monic())]
        if N.den.deg > 0:
            support += [p for p, _ in factor(N.den)]
        bad = self.cfg.m * self.cfg.g * a
        seen, ok = [], True
        for p in sorted(set(support), key=Poly.sort_key):
            if p.divides(bad.gen):
                continue
            seen.append(str(p))
            vs = val_at_primes(kap, self.K, p)
            ok = ok and all(v % self.cfg.M == 0 for _, v in vs)
        return Check(f"kappa-residue-elsewhere[{a}]", ",".join(seen) or "no prime outside m g a",
                     "all zero mod M", ok)

    def act_on_vector(self, u: Poly, vec: tuple, ell: MonicIdeal) -> tuple[int, ...]:
        """sigma_u . sum a_j lambda_j, with lambda_j = sigma_{reps[j]} lambda_0."""
        reps, _ = self.K_primes(ell)
        out = [0] * len(vec)
        for j, a in enumerate(vec):
            t = self.U.mul(u, reps[j])
            i = next(i for i, r in enumerate(reps) if self.U.mul(t, self.U.inv(r)) in self.K.S)
            out[i] = a
        return tuple(out)

    def verify_equivariance(self, y: CycloElement, u: Poly, ell: MonicIdeal) -> Check:
        lhs = self.phi(self.field.galois(u, y), ell)
        rhs = self.act_on_vector(u, self.phi(y, ell), ell)
        return Check(f"equivariance[{ell},{u}]", str(list(lhs)), str(list(rhs)), lhs == rhs)

    def same_kernel(self, x: CycloElement, ell: MonicIdeal) -> bool:
        """psi_l(x) = 0 exactly when [N x]_l = 0."""
        a = not any(self.psi(x, ell))
        b = not any(self.ideal_vector(self.norm_to_K(x, ell), ell))
        return a == b

    def sample_elements(self, ell: MonicIdeal, count: int, seed: int = 0) -> list[CycloElement]:
        """Deterministic sample of elements of K(l)^x with varied valuations above l."""
        import random

        rng = random.Random(seed)
        K = self.field
        Kl = self.K_of(ell)
        pi = self.uniformizer(ell)
        base = [pi, self.alpha(ell), K.scalar(ell.gen), self.alpha(MonicIdeal(Poly(K.F, (1,))))]
        out = []
        F = K.F
        while len(out) < count:
            j = rng.randrange(1, 4)
            c = Poly(F, [rng.randrange(F.order) for _ in range(rng.randrange(1, 3))])
            y = K.norm_over(Kl.S, K.lam ** j + K.scalar(c)) if not c.is_zero() else K.norm_over(Kl.S, K.lam)
            if y.is_zero():
                continue
            e = [rng.randrange(-1, 3) for _ in base]
            z = y
            for b, k in zip(base, e):
                if k > 0:
                    z = z * b ** k
                elif k < 0:
                    z = z / b ** (-k)
            out.append(z)
        return out


def _inv_mod(a: int, n: int) -> int:
    return pow(a % n, -1, n) if n > 1 else 0


def _dlog(G, r: Poly, target: Poly) -> int:
    """k with r^k = target in the cyclic group G."""
    x = G.reduce(Poly(r.F, (1,)))
    t = G.reduce(target)
    for k in range(G.order):
        if x == t:
            return k
        x = G.mul(x, r)
    raise ValueError("not in the cyclic group generated by r")


def _normalize(x: CycloElement) -> CycloElement:
    """Write x with a scalar denominator and cancel common polynomial factors."""
    num, d = x.with_scalar_den()
    g = d
    for c in num:
        g = g.gcd(c) if not c.is_zero() else g
    g = g.monic()
    num = [c // g for c in num]
    d = d // g
    K = x.K
    y = K.from_polys(num)
    if d.is_one():
        return y
    return K.element(y.num, K.C.polys_to_array([d]))


# -- Chebotarev conditions -----------------------------------------------------------------------

def group_ring_units(M: int, G_order: int, mul_table) -> set:
    """Units of Z/M[G], for G given by its multiplication table on 0..n-1."""
    n = G_order
    if M ** n > 200000:
        raise ValueError("group ring too large to enumerate")

    def mul(a, b):
        out = [0] * n
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        k = mul_table[i][j]
                        out[k] = (out[k] + x * y) % M
        return tuple(out)

    one = tuple(1 if i == 0 else 0 for i in range(n))
    elems = list(product(range(M), repeat=n))
    units = set()
    for a in elems:
        if a in units:
            continue
        for b in elems:
            if mul(a, b) == one:
                units.add(a)
                units.add(b)
                break
    return units, mul


def class_order(cfg: EulerConfig, beta: CycloElement, max_test_deg: int = 6) -> int:
    """Order of beta in K^x/(K^x)^M, from valuations and local M-th power tests.

    beta^k is declared an M-th power when it is one in every residue field
    of K at the split primes of degree <= max_test_deg and its valuations
    are divisible by M at the primes dividing its norm.
    """
    from .base_arith.factor import monic_irreducibles, factor

    M = cfg.M
    K = beta.K
    Ksub = SubfieldSpec(K, K.pullback(cfg.m, cfg.S))
    N = Ksub.norm_to_k(beta).to_k()
    support = [p for p, _ in factor(N.num.monic())] + [p for p, _ in factor(N.den.monic())]
    tests = []
    for d in range(1, max_test_deg + 1):
        for p in monic_irreducibles(K.F, d):
            if p.divides(cfg.m.gen) or any(p == s for s in support):
                continue
            if (MonicIdeal(p).norm - 1) % M == 0:
                tests.append(p)
    for k in sorted(x for x in _divisors(M)):
        target = beta ** k
        ok = True
        for p in support:
            if p.divides(cfg.m.gen):
                continue
            for sp in subfield_primes(Ksub, p):
                if (sp.rep.valuation(target) // sp.e_top) % M:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for p in tests:
                for P in primes_above(K, p):
                    r = P.unit_residue(target)
                    Fl = P.ring
                    if Fl.pow(r, (Fl.order - 1) // M) != Fl.red(Poly(Fl.Fl, (1,), "x")):
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            return k
    return M


def _divisors(M: int) -> list[int]:
    return [d for d in range(1, M + 1) if M % d == 0]


@dataclass
class ChebotarevResult:
    ell: MonicIdeal
    phi: tuple
    m: int
    passed: bool
    reason: str

    def as_dict(self) -> dict:
        return {"ell": str(self.ell), "phi": list(self.phi), "order": self.m,
                "pass": self.passed, "reason": self.reason}


def k_of_ell(ell: MonicIdeal, cfg: EulerConfig) -> SubfieldSpec:
    """K(l) inside k_{ml}."""
    return EulerSystem(cfg, [ell]).K_of(ell)


def passers(results: list[ChebotarevResult]) -> list[MonicIdeal]:
    return [r.ell for r in results if r.passed]


def chebotarev_candidates(cfg: EulerConfig, beta: CycloElement, max_deg: int,
                          order: int | None = None) -> list[ChebotarevResult]:
    """Primes l of degree <= max_deg with l in the prime set, [beta]_l = 0
    and phi_l(beta) = (M/m) u lambda for a unit u of Z/M[G] and a prime
    lambda of K above l.  beta must lie in K inside k_m."""
    M = cfg.M
    m_ord = order if order is not None else class_order(cfg, beta)
    field = beta.K
    if field.modulus != cfg.m:
        raise ValueError("beta must be given inside k_m")
    Ksub = SubfieldSpec(field, field.pullback(cfg.m, cfg.S))
    reps = Ksub.galois_group_reps()
    U = field.units
    idx = {}
    for i, u in enumerate(reps):
        idx[u] = i

    def rep_of(u):
        for r in reps:
            if U.mul(u, U.inv(r)) in Ksub.S:
                return r
        raise AssertionError

    table = [[idx[rep_of(U.mul(a, b))] for b in reps] for a in reps]
    units, gr_mul = group_ring_units(M, len(reps), table)
    scaled = {tuple((M // m_ord) * x % M for x in u) for u in units}
    out = []
    for ell in curly_L_primes(cfg, max_deg):
        loc = LocalMaps(cfg, ell, Ksub)
        vec = loc.ideal_vector(beta)
        if any(vec):
            out.append(ChebotarevResult(ell, vec, m_ord, False, "[beta]_l != 0"))
            continue
        ph = loc.phi(beta)
        # phi = (M/m) u sigma_j(lambda_0) for some j: shift coordinates by j
        ok = False
        for j in range(len(reps)):
            # coefficient vector of phi relative to the basis g.lambda_j
            shifted = [0] * len(reps)
            for i in range(len(reps)):
                # lambda_i = reps[i] lambda_0 = (reps[i] reps[j]^-1) lambda_j
                t = idx[rep_of(U.mul(reps[i], U.inv(reps[j])))]
                shifted[t] = ph[i]
            if tuple(shifted) in scaled:
                ok = True
                break
        out.append(ChebotarevResult(ell, ph, m_ord, ok, "unit multiple" if ok else "no unit u"))
    return out


class LocalMaps:
    """[y]_l and phi_l for y in K, computed inside K's own field k_m.

    The class of pi^(1-sigma_l) is r_l^-1 for pi = N_{k_l/H(l)}(lambda_l);
    EulerSystem.pi_classes recomputes it directly in k_{ml}.
    """

    def __init__(self, cfg: EulerConfig, ell: MonicIdeal, Ksub: SubfieldSpec):
        self.cfg = cfg
        self.ell = ell
        self.Ksub = Ksub
        field = Ksub.field
        sps = subfield_primes(Ksub, ell.gen)
        if sps[0].e != 1 or sps[0].f != 1:
            raise ValueError(f"{ell} does not split completely in K")
        prs = primes_above(field, ell.gen)
        orbit_of = {j: i for i, sp in enumerate(sps) for j in sp.members}
        base = sps[0].rep.index
        self.primes = []
        for u in Ksub.galois_group_reps():
            perm = prime_permutation(field, prs, u)
            self.primes.append(sps[orbit_of[perm[base]]])
        self.root = primitive_root(ell)

    def ideal_vector(self, y: CycloElement) -> tuple[int, ...]:
        M = self.cfg.M
        return tuple((sp.rep.valuation(y) // sp.e_top) % M for sp in self.primes)

    def phi(self, y: CycloElement) -> tuple[int, ...]:
        from .cyclo_primes import residue_field

        M = self.cfg.M
        ell = self.ell
        Fl = residue_field(self.cfg.q, ell.gen.c)
        rl = Fl.log[poly_to_code(Fl, self.root, ell.gen)]
        ell_el = y.K.scalar(ell.gen)
        out = []
        for sp in self.primes:
            v = sp.rep.valuation(y) // sp.e_top
            yy = y / ell_el ** v if v > 0 else (y * ell_el ** (-v) if v < 0 else y)
            r = sp.rep.unit_residue(yy)
            c = sp.rep.ring.const_code(r)
            k = Fl.log[c] * _inv_mod(rl, Fl.order - 1) % (Fl.order - 1)
            # c_lambda = -1, so phi = -dlog
            out.append(-k % M)
        return tuple(out)
