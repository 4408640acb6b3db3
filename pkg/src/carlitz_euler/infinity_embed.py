"""Expansions at the infinite place.

Every completion of k_n at a place above infinity is F_q((s)) with
s^(q-1) = -1/T: infinity splits completely in H_n and k_n/H_n is totally
ramified at infinity by the constants, and (-1/T)^(1/(q-1)) generates
that local extension.  So torsion points are Laurent series in s with
coefficients in F_q, and v_inf(s) = 1/(q-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

import numpy as np

from .base_arith.bivariate import ctx
from .base_arith.finite_field import GF
from .base_arith.ideals import MonicIdeal
from .base_arith.poly import Poly
from .base_arith.rational import RatFunc


class PrecisionError(ArithmeticError):
    """Raised when a series is not known far enough to answer."""


@dataclass(frozen=True, eq=False)
class PuiseuxSeries:
    """sum_j c[j] s^(val+j) + O(s^prec) with s^(q-1) = -1/T.

    ``c`` holds F_p digit vectors of F_q elements, one row per term.
    ``prec`` is the absolute precision; None means the series is exact.
    """

    q: int
    val: int
    c: np.ndarray
    prec: int | None = None

    # -- construction ------------------------------------------------------------
    @classmethod
    def make(cls, q: int, val: int, c: np.ndarray, prec: int | None) -> "PuiseuxSeries":
        C = ctx(q)
        c = np.asarray(c, dtype=np.int64) % C.p
        if c.ndim == 1:
            c = c.reshape(-1, C.n)
        if prec is not None and c.shape[0] > prec - val:
            c = c[: max(prec - val, 0)]
        nz = np.flatnonzero(c.any(axis=1))
        if nz.size == 0:
            v = prec if prec is not None else 0
            return cls(q, v, np.zeros((0, C.n), dtype=np.int64), prec)
        return cls(q, val + int(nz[0]), c[nz[0]: nz[-1] + 1], prec)

    @classmethod
    def zero(cls, q: int, prec: int | None = None) -> "PuiseuxSeries":
        return cls.make(q, 0, np.zeros((0, ctx(q).n)), prec)

    @classmethod
    def monomial(cls, q: int, code: int, k: int) -> "PuiseuxSeries":
        C = ctx(q)
        return cls.make(q, k, C.digits[[code]], None)

    @classmethod
    def from_poly(cls, a: Poly) -> "PuiseuxSeries":
        """Exact expansion of a polynomial in T, using T = -s^-(q-1)."""
        q = a.F.order
        F = a.F
        if a.is_zero():
            return cls.zero(q)
        e = q - 1
        top = a.deg * e
        codes = [0] * (top + 1)
        # T^j = (-1)^j s^(-e j): store at offset top - e j from val = -top
        for j, cj in enumerate(a.c):
            if cj:
                codes[top - e * j] = cj if j % 2 == 0 else F.neg(cj)
        return cls.make(q, -top, ctx(q).digits[codes], None)

    @classmethod
    def from_ratfunc(cls, x: RatFunc | Poly, rel: int) -> "PuiseuxSeries":
        if isinstance(x, Poly):
            return cls.from_poly(x)
        num = cls.from_poly(x.num)
        if x.den.is_one():
            return num
        return num * cls.from_poly(x.den).inverse(rel)

    # -- basic data --------------------------------------------------------------
    @property
    def F(self):
        return GF(self.q)

    def is_zero(self) -> bool:
        return self.c.shape[0] == 0

    def known_zero(self) -> bool:
        """True if no nonzero coefficient is known (the value may not be 0)."""
        return self.is_zero() and self.prec is not None

    def codes(self) -> list[int]:
        C = ctx(self.q)
        return [int(v) for v in self.c @ C.weights]

    def coeff(self, k: int) -> int:
        j = k - self.val
        if self.prec is not None and k >= self.prec:
            raise PrecisionError(f"coefficient of s^{k} is beyond the precision")
        if 0 <= j < self.c.shape[0]:
            return int(self.c[j] @ ctx(self.q).weights)
        return 0

    def valuation_s(self) -> int:
        if self.is_zero():
            if self.prec is None:
                raise ValueError("valuation of zero")
            raise PrecisionError("no nonzero coefficient within precision")
        return self.val

    def valuation(self) -> Fraction:
        """v_inf, normalized by v_inf(1/T) = 1."""
        return Fraction(self.valuation_s(), self.q - 1)

    def leading(self) -> int:
        self.valuation_s()
        return self.codes()[0]

    @property
    def e(self) -> int:
        """Ramification index over F_q((1/T)) actually used by the terms."""
        g = self.q - 1
        for k, c in enumerate(self.codes()):
            if c:
                g = gcd(g, self.val + k)
        return (self.q - 1) // gcd(g, self.q - 1)

    @property
    def d(self) -> int:
        return 1

    def truncate(self, prec: int) -> "PuiseuxSeries":
        p = prec if self.prec is None else min(prec, self.prec)
        return PuiseuxSeries.make(self.q, self.val, self.c, p)

    # -- arithmetic ------------------------------------------------------------------
    def _join(self, o: "PuiseuxSeries", sign: int) -> "PuiseuxSeries":
        n = ctx(self.q).n
        if self.is_zero() and o.is_zero():
            lo = 0
        elif self.is_zero():
            lo = o.val
        elif o.is_zero():
            lo = self.val
        else:
            lo = min(self.val, o.val)
        hi = max(self.val + self.c.shape[0], o.val + o.c.shape[0], lo)
        out = np.zeros((hi - lo, n), dtype=np.int64)
        if not self.is_zero():
            out[self.val - lo: self.val - lo + self.c.shape[0]] += self.c
        if not o.is_zero():
            out[o.val - lo: o.val - lo + o.c.shape[0]] += sign * o.c
        return PuiseuxSeries.make(self.q, lo, out, _min_prec(self.prec, o.prec))

    def __add__(self, o: "PuiseuxSeries") -> "PuiseuxSeries":
        return self._join(o, 1)

    def __sub__(self, o: "PuiseuxSeries") -> "PuiseuxSeries":
        return self._join(o, -1)

    def __neg__(self) -> "PuiseuxSeries":
        return PuiseuxSeries.make(self.q, self.val, -self.c, self.prec)

    def scale(self, code: int) -> "PuiseuxSeries":
        if code == 0:
            return PuiseuxSeries.zero(self.q, self.prec)
        M = ctx(self.q).mulmats[code]
        return PuiseuxSeries.make(self.q, self.val, self.c @ M, self.prec)

    def __mul__(self, o: "PuiseuxSeries") -> "PuiseuxSeries":
        prec = _min_prec(
            None if self.prec is None else self.prec + (o.val if not o.is_zero() else o.prec or 0),
            None if o.prec is None else o.prec + (self.val if not self.is_zero() else self.prec or 0),
        )
        if self.is_zero() or o.is_zero():
            if prec is None:
                return PuiseuxSeries.zero(self.q)
            return PuiseuxSeries.zero(self.q, prec)
        C = ctx(self.q)
        a, b = self.c, o.c
        if prec is not None:
            a = a[: max(prec - self.val - o.val, 1)]
            b = b[: max(prec - self.val - o.val, 1)]
        prod = C.mul(a[None], b[None])[0]
        return PuiseuxSeries.make(self.q, self.val + o.val, prod, prec)

    def inverse(self, rel: int) -> "PuiseuxSeries":
        """1/self to relative precision ``rel`` (and never beyond what is known)."""
        v = self.valuation_s()
        if self.prec is not None:
            rel = min(rel, self.prec - v)
        F = self.F
        C = ctx(self.q)
        u = PuiseuxSeries.make(self.q, 0, self.c, None if self.prec is None else self.prec - v)
        lead = F.inv(u.codes()[0])
        y = PuiseuxSeries.monomial(self.q, lead, 0)
        two = PuiseuxSeries.monomial(self.q, F.from_int(2), 0)
        k = 1
        while k < rel:
            k = min(2 * k, rel)
            ut = u.truncate(k)
            y = (y * (two - ut * y)).truncate(k)
            # the iterate is an exact polynomial approximation; keep it exact
            y = PuiseuxSeries.make(self.q, y.val, y.c, None)
        y = PuiseuxSeries.make(self.q, -v, y.c, k - v)
        return y

    def frobenius(self, Q: int) -> "PuiseuxSeries":
        """self^Q for Q a power of q (coefficients in F_q are fixed)."""
        if self.is_zero():
            return PuiseuxSeries.zero(self.q, None if self.prec is None else self.prec * Q)
        n = ctx(self.q).n
        out = np.zeros(((self.c.shape[0] - 1) * Q + 1, n), dtype=np.int64)
        out[::Q] = self.c
        return PuiseuxSeries.make(self.q, self.val * Q, out,
                                  None if self.prec is None else self.prec * Q)

    def __pow__(self, k: int) -> "PuiseuxSeries":
        if k < 0:
            raise ValueError("use inverse for negative powers")
        r = PuiseuxSeries.monomial(self.q, 1, 0)
        b = self
        while k:
            if k & 1:
                r = r * b
            k >>= 1
            if k:
                b = b * b
        return r

    def __str__(self) -> str:
        F = self.F
        terms = []
        for k, c in enumerate(self.codes()):
            if c:
                terms.append(f"{F.fmt(c)}*s^{self.val + k}")
        body = " + ".join(terms) if terms else "0"
        return body if self.prec is None else f"{body} + O(s^{self.prec})"

    __repr__ = __str__


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


# -- Newton polygons -----------------------------------------------------------------

def _v_inf(c) -> Fraction | None:
    if isinstance(c, Poly):
        return None if c.is_zero() else Fraction(-c.deg)
    if isinstance(c, RatFunc):
        return None if c.is_zero() else Fraction(c.v_inf())
    if isinstance(c, PuiseuxSeries):
        return None if c.is_zero() else c.valuation()
    raise TypeError(f"unsupported coefficient {type(c).__name__}")


def lower_hull(points: list[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    hull: list[tuple[int, Fraction]] = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point if it lies on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_segments(coeffs) -> list[tuple[Fraction, int, int, int]]:
    """[(root valuation, length, i0, i1)] from left to right."""
    pts = [(i, v) for i, v in ((i, _v_inf(c)) for i, c in enumerate(coeffs)) if v is not None]
    if not pts:
        raise ValueError("zero polynomial")
    out = []
    if pts[0][0] > 0:
        out.append((None, pts[0][0], 0, pts[0][0]))  # roots at 0
    hull = lower_hull(pts)
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        out.append((-(y2 - y1) / (x2 - x1), x2 - x1, x1, x2))
    return out


def newton_valuations(coeffs) -> list[Fraction]:
    """Multiset of v_inf of the roots of sum coeffs[i] x^i, sorted."""
    coeffs = list(coeffs)
    while coeffs and _v_inf(coeffs[-1]) is None:
        coeffs.pop()
    if not coeffs:
        raise ValueError("zero polynomial")
    out: list[Fraction] = []
    for mu, length, _, _ in newton_segments(coeffs):
        if mu is None:
            raise ValueError("x divides the polynomial; 0 is a root")
        out.extend([mu] * length)
    return sorted(out)


# -- roots --------------------------------------------------------------------------

def _poly_eval(coeffs: list[PuiseuxSeries], x: PuiseuxSeries) -> PuiseuxSeries:
    acc = coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x + c
    return acc


def _taylor_shift(coeffs: list[PuiseuxSeries], a: PuiseuxSeries) -> list[PuiseuxSeries]:
    """Coefficients of f(a + y)."""
    out = list(coeffs)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] = out[j] + out[j + 1] * a
    return out


def _derivative(coeffs: list[PuiseuxSeries]) -> list[PuiseuxSeries]:
    q = coeffs[0].q
    F = GF(q)
    return [c.scale(F.from_int(i)) for i, c in enumerate(coeffs) if i] or [PuiseuxSeries.zero(q)]


def _series_coeffs(f) -> list[PuiseuxSeries]:
    """Exact series coefficients of f after clearing denominators."""
    f = list(f)
    polys = []
    den = None
    for c in f:
        if isinstance(c, RatFunc) and not c.den.is_one():
            den = c.den if den is None else den * c.den.exact_div(den.gcd(c.den))
    for c in f:
        if isinstance(c, RatFunc):
            c = c * RatFunc(den) if den is not None else c
            assert c.is_poly()
            c = c.num
        polys.append(c)
    while polys and polys[-1].is_zero():
        polys.pop()
    if not polys:
        raise ValueError("zero polynomial")
    return [PuiseuxSeries.from_poly(c) for c in polys]


def _refine(f: list[PuiseuxSeries], df: list[PuiseuxSeries], x: PuiseuxSeries, N: int) -> PuiseuxSeries:
    """Newton iteration from an approximation closer to one root than to
    any other, until the root is pinned down modulo s^N."""
    D = len(f) - 1
    for _ in range(200):
        vx = x.val if not x.is_zero() else 0
        slack = D * max(0, -vx) + max(0, -min(c.val for c in f if not c.is_zero()))
        work = N + slack + 4
        fx = _poly_eval([c.truncate(work) for c in f], x)
        dfx = _poly_eval([c.truncate(work) for c in df], x)
        if fx.is_zero() and fx.prec is None:
            return x
        vd = dfx.valuation_s()
        if fx.is_zero():
            err = fx.prec - vd
        else:
            err = fx.val - vd
        if err >= N:
            return x.truncate(N)
        step = fx * dfx.inverse(N - vd + 2)
        x = (x - step)
        x = PuiseuxSeries.make(x.q, x.val, x.c, None).truncate(N + 2)
        x = PuiseuxSeries.make(x.q, x.val, x.c, None)
    raise PrecisionError("Newton iteration did not converge")


def _branch(f: list[PuiseuxSeries], df, P: PuiseuxSeries, lower, mult: int, N: int,
            only_max: bool, depth: int = 0) -> list[PuiseuxSeries]:
    if depth > 64:
        raise PrecisionError("roots could not be separated")
    q = f[0].q
    F = GF(q)
    g = _taylor_shift(f, P) if not P.is_zero() else f
    out: list[PuiseuxSeries] = []
    k0 = 0
    while k0 < len(g) and g[k0].is_zero():
        k0 += 1
    if k0:
        out.extend([P] * k0)
    segs = [s for s in newton_segments(g) if s[0] is not None and (lower is None or s[0] * (q - 1) > lower)]
    if only_max and segs:
        segs = segs[:1]
    for mu, length, i0, i1 in segs:
        mus = mu * (q - 1)
        if mus.denominator != 1:
            raise ValueError("roots need more ramification than s provides")
        mus = int(mus)
        # residual polynomial in z from the leading coefficients on the segment
        res = []
        for i in range(i0, i1 + 1):
            c = g[i]
            if not c.is_zero() and Fraction(c.val, q - 1) + i * mu == Fraction(g[i0].val, q - 1) + i0 * mu:
                res.append(c.codes()[0])
            else:
                res.append(0)
        R = Poly(F, res, "z")
        found = 0
        for z in range(1, q):
            m = 0
            while R(z) == 0 and R.deg > 0:
                R = R // Poly(F, (F.neg(z), 1), "z")
                m += 1
            if not m:
                continue
            found += m
            Pn = P + PuiseuxSeries.monomial(q, z, mus)
            if m == 1:
                out.append(_refine(f, df, Pn, N))
            else:
                out.extend(_branch(f, df, Pn, mus, m, N, False, depth + 1))
        if found < length:
            raise ValueError("roots need a constant field extension")
    if not only_max:
        assert len(out) == mult, "lost track of roots"
    return out


def puiseux_roots(f, N: int | None = None, only_max: bool = False) -> list[PuiseuxSeries]:
    """Roots of sum f[i] x^i in F_q((s)), each known modulo s^N.

    N is an absolute precision in s; the default is four times the degree
    past the largest pole of a coefficient.
    """
    fs = _series_coeffs(f)
    q = fs[0].q
    D = len(fs) - 1
    if D < 1:
        return []
    if N is None:
        N = 4 * D * (q - 1)
    df = _derivative(fs)
    roots = _branch(fs, df, PuiseuxSeries.zero(q), None, D, N, only_max)
    return sorted(roots, key=_root_key)


def _root_key(r: PuiseuxSeries):
    if r.is_zero():
        return (0, 0)
    return (-r.val, r.codes()[0])


def distinguished_root(psi_coeffs, N: int) -> PuiseuxSeries:
    """The root of maximal valuation, smallest leading coefficient on ties."""
    roots = puiseux_roots(psi_coeffs, N, only_max=True)
    return min(roots, key=_root_key)


# -- embedding of cyclotomic elements -----------------------------------------------------

def carlitz_series(a: Poly, r: PuiseuxSeries) -> PuiseuxSeries:
    """Phi_a(r) = sum c_i r^(q^i)."""
    from .carlitz import carlitz_coeffs

    q = r.q
    acc = PuiseuxSeries.zero(q)
    for i, c in enumerate(carlitz_coeffs(a)):
        if not c.is_zero():
            acc = acc + PuiseuxSeries.from_poly(c) * r.frobenius(q ** i)
    return acc


def embed(x, root: PuiseuxSeries, rel: int) -> PuiseuxSeries:
    """The image of a CycloElement under lambda -> root."""
    coeffs = x.coeffs()
    acc = PuiseuxSeries.zero(root.q)
    for c in reversed(coeffs):
        acc = acc * root + PuiseuxSeries.from_ratfunc(c, rel)
    return acc


def _psi_coeffs(n: MonicIdeal) -> list[Poly]:
    from .carlitz import primitive_division_poly

    return primitive_division_poly(n).coeffs()


@lru_cache(maxsize=256)
def lambda_series(n: MonicIdeal, N: int) -> PuiseuxSeries:
    """The distinguished embedding of lambda_n, modulo s^N."""
    return distinguished_root(_psi_coeffs(n), N)


def valuation_under(x, u: Poly, N0: int | None = None, max_doublings: int = 6) -> Fraction:
    """v_inf(sigma_u(x)) under the distinguished embedding of k_n."""
    K = x.K
    N = N0 or 4 * K.degree
    for _ in range(max_doublings):
        try:
            r0 = lambda_series(K.modulus, N)
            ru = carlitz_series(u, r0)
            num = embed(x.K.element(x.num), ru, N)
            v = num.valuation()
            if x.den is not None:
                v -= embed(x.K.element(x.den), ru, N).valuation()
            return v
        except PrecisionError:
            N *= 2
    raise PrecisionError("precision escalation exhausted")


def v_inf_per_sigma(m: MonicIdeal, S=None) -> dict[Poly, Fraction]:
    """{u: v_inf(eps_m^sigma_u)} over representatives u of Gal(H_m/k)."""
    from .cyclo_field import SubfieldSpec, cyclo_field
    from .cyclo_relations import stark_unit

    if m.deg < 1:
        raise ValueError("needs a proper modulus")
    K = cyclo_field(m)
    eps = stark_unit(m)
    H = SubfieldSpec.H(K)
    out = {}
    for u in H.galois_group_reps():
        out[u] = valuation_under(eps, u)
    return out


def closed_form_valuation(m: MonicIdeal, u: Poly) -> Fraction:
    """v_inf(Phi_u(lambda_m)) for the distinguished lambda_m, deg u < deg m."""
    q = m.q
    return Fraction(m.deg - (u % m.gen).deg) - Fraction(q, q - 1)


def char_poly_over_k(x, reps) -> list[RatFunc]:
    """prod_{u in reps} (X - sigma_u x) as a list of F_q(T) coefficients."""
    K = x.K
    poly = [K.one()]
    for u in reps:
        y = K.galois(u, x)
        new = [K.zero()] * (len(poly) + 1)
        for i, c in enumerate(poly):
            new[i + 1] = new[i + 1] + c
            new[i] = new[i] - c * y
        poly = new
    return [c.to_k() for c in poly]
