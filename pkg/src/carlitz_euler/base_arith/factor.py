"""Factorization in F_q[T] and over general finite fields.

``factor`` is plain trial division by monic irreducibles in canonical
order, which is all the ideal arithmetic needs.  ``factor_cz`` is a
Cantor-Zassenhaus factorizer used for residue-field computations, where
the polynomials are bigger and the coefficient field can be larger.
"""

from __future__ import annotations

import random
from functools import lru_cache

from .poly import Poly, monics


def factor(a: Poly) -> list[tuple[Poly, int]]:
    """Factor a nonzero polynomial into monic irreducibles.

    Returns ``[(p, e), ...]`` sorted by (degree, coefficients); the unit
    sgn(a) is dropped.
    """
    if a.is_zero():
        raise ValueError("cannot factor zero")
    a = a.monic()
    out = []
    d = 1
    while 2 * d <= a.deg:
        for p in monics(a.F, d, a.var):
            if 2 * d > a.deg:
                break
            e = 0
            while True:
                qt, r = divmod(a, p)
                if r:
                    break
                a, e = qt, e + 1
            if e:
                out.append((p, e))
        d += 1
    if a.deg >= 1:
        # what is left is irreducible; merge if it repeats a found factor
        for i, (p, e) in enumerate(out):
            if p == a:
                out[i] = (p, e + 1)
                break
        else:
            out.append((a, 1))
    out.sort(key=lambda pe: pe[0].sort_key())
    return out


def is_irreducible(a: Poly) -> bool:
    if a.deg < 1:
        return False
    f = factor(a)
    return len(f) == 1 and f[0][1] == 1


@lru_cache(maxsize=None)
def _irreducibles_cached(q: int, d: int, var: str):
    from .finite_field import GF

    return tuple(p for p in monics(GF(q), d, var) if is_irreducible(p))


def monic_irreducibles(F, d: int, var: str = "T") -> tuple[Poly, ...]:
    """All monic irreducibles of degree d in canonical order."""
    return _irreducibles_cached(F.order, d, var)


# -- Cantor-Zassenhaus --------------------------------------------------------

def _pth_root_poly(f: Poly) -> Poly:
    """For f = g(x^p) return g with coefficients replaced by p-th roots."""
    F = f.F
    p = F.char
    e = F.order // p  # a^(Q/p) is the p-th root of a
    return Poly(F, [F.pow(f.c[i], e) for i in range(0, len(f.c), p)], f.var)


def squarefree_decomposition(f: Poly) -> list[tuple[Poly, int]]:
    """Return [(g_i, i)] with f = lc * prod g_i^i and g_i squarefree."""
    f = f.monic()
    out: list[tuple[Poly, int]] = []
    p = f.F.char

    def rec(f: Poly, mult: int):
        if f.deg < 1:
            return
        df = f.derivative()
        if df.is_zero():
            rec(_pth_root_poly(f), mult * p)
            return
        c = f.gcd(df)
        w = f.exact_div(c)
        i = 1
        while w.deg >= 1:
            y = w.gcd(c)
            z = w.exact_div(y)
            if z.deg >= 1:
                out.append((z, i * mult))
            i += 1
            w = y
            c = c.exact_div(y)
        if c.deg >= 1:
            rec(_pth_root_poly(c), mult * p)

    rec(f, 1)
    return out


def distinct_degree(f: Poly) -> list[tuple[Poly, int]]:
    """For squarefree monic f, return [(g_d, d)] with g_d the product of
    its irreducible factors of degree d."""
    Q = f.F.order
    x = Poly.gen(f.F, f.var)
    h = x % f
    out = []
    d = 0
    rest = f
    while rest.deg >= 2 * (d + 1):
        d += 1
        h = h.pow_mod(Q, rest)
        g = rest.gcd(h - x)
        if g.deg >= 1:
            out.append((g, d))
            rest = rest.exact_div(g)
            h = h % rest
    if rest.deg >= 1:
        out.append((rest, rest.deg))
    return out


def equal_degree(f: Poly, d: int, rng: random.Random) -> list[Poly]:
    """Split squarefree monic f whose irreducible factors all have degree d."""
    if f.deg == d:
        return [f]
    F = f.F
    Q = F.order
    n = f.deg
    while True:
        a = Poly(F, [rng.randrange(Q) for _ in range(n)], f.var)
        if a.deg < 1:
            continue
        if F.char == 2:
            # absolute trace from F_{Q^d} down to F_2
            k = d * (Q.bit_length() - 1)
            t = a % f
            acc = t
            for _ in range(k - 1):
                t = (t * t) % f
                acc = acc + t
            b = acc
        else:
            b = a.pow_mod((Q ** d - 1) // 2, f) - 1
        g = f.gcd(b)
        if 0 < g.deg < n:
            return equal_degree(g, d, rng) + equal_degree(f.exact_div(g), d, rng)


def factor_cz(f: Poly, seed: int = 0) -> list[tuple[Poly, int]]:
    """Full factorization over the coefficient field, sorted canonically."""
    rng = random.Random(seed)
    out: dict[Poly, int] = {}
    for g, m in squarefree_decomposition(f):
        for h, d in distinct_degree(g):
            for irr in equal_degree(h, d, rng):
                out[irr] = out.get(irr, 0) + m
    return sorted(out.items(), key=lambda pe: pe[0].sort_key())
