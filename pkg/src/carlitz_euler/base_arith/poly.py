"""Dense univariate polynomials over a table-driven finite field."""

from __future__ import annotations

from itertools import product

from .finite_field import FiniteField


class Poly:
    """Immutable polynomial with coefficients in a FiniteField.

    ``c`` holds field codes, constant term first, with no trailing zeros.
    ``var`` is only used for printing.
    """

    __slots__ = ("F", "c", "var", "_hash")

    def __init__(self, F: FiniteField, coeffs=(), var: str = "T"):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.F = F
        self.c = tuple(c)
        self.var = var
        self._hash = None

    # -- constructors ---------------------------------------------------------
    @classmethod
    def const(cls, F, a: int, var: str = "T") -> "Poly":
        return cls(F, (a,), var)

    @classmethod
    def gen(cls, F, var: str = "T") -> "Poly":
        return cls(F, (0, 1), var)

    @classmethod
    def monomial(cls, F, d: int, a: int = 1, var: str = "T") -> "Poly":
        return cls(F, (0,) * d + (a,), var)

    def _new(self, coeffs) -> "Poly":
        return Poly(self.F, coeffs, self.var)

    # -- basic data ------------------------------------------------------------
    @property
    def deg(self) -> int:
        """Degree, with deg 0 = -1."""
        return len(self.c) - 1

    def lc(self) -> int:
        return self.c[-1] if self.c else 0

    def is_zero(self) -> bool:
        return not self.c

    def is_one(self) -> bool:
        return self.c == (1,)

    def is_monic(self) -> bool:
        return bool(self.c) and self.c[-1] == 1

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.c == other.c and self.F is other.F
        if isinstance(other, int):
            return self.c == ((other % self.F.char,) if other % self.F.char else ())
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.F.order, self.c))
        return self._hash

    def __lt__(self, other: "Poly") -> bool:
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        """Degree first, then coefficients from the top."""
        return (len(self.c), tuple(reversed(self.c)))

    def __getitem__(self, i: int) -> int:
        return self.c[i] if 0 <= i < len(self.c) else 0

    # -- ring operations --------------------------------------------------------
    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, int):
            return self._new((self.F.from_int(other),))
        raise TypeError(f"cannot combine Poly with {type(other).__name__}")

    def __add__(self, other) -> "Poly":
        o = self._coerce(other)
        F = self.F
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        if F.char == 2:
            out = list(a)
            for i, y in enumerate(b):
                out[i] ^= y
        else:
            add = F.add
            out = list(a)
            for i, y in enumerate(b):
                out[i] = add(out[i], y)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        neg = self.F.neg
        return self._new([neg(x) for x in self.c])

    def __sub__(self, other) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Poly":
        return self._coerce(other) - self

    def scale(self, a: int) -> "Poly":
        """Multiply by the field element with code a."""
        if a == 0:
            return self._new(())
        if a == 1:
            return self
        mul = self.F.mul
        return self._new([mul(a, x) for x in self.c])

    def __mul__(self, other) -> "Poly":
        o = self._coerce(other)
        return self._new(_mul_codes(self.F, self.c, o.c))

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        if k < 0:
            raise ValueError("negative power of a polynomial")
        r = self._new((1,))
        b = self
        while k:
            if k & 1:
                r = r * b
            b = b * b
            k >>= 1
        return r

    def shift(self, k: int) -> "Poly":
        """Multiply by var^k."""
        if not self.c:
            return self
        return self._new((0,) * k + self.c)

    def __divmod__(self, other) -> tuple["Poly", "Poly"]:
        o = self._coerce(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        F = self.F
        r = list(self.c)
        dg = o.deg
        if len(r) <= dg:
            return self._new(()), self
        inv_lc = F.inv(o.c[-1])
        qc = [0] * (len(r) - dg)
        g = o.c
        mul, sub = F.mul, F.sub
        for k in range(len(r) - 1, dg - 1, -1):
            c = r[k]
            if c:
                t = mul(c, inv_lc)
                qc[k - dg] = t
                base = k - dg
                for j in range(dg):
                    gj = g[j]
                    if gj:
                        r[base + j] = sub(r[base + j], mul(t, gj))
                r[k] = 0
        return self._new(qc), self._new(r[:dg])

    def __floordiv__(self, other) -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "Poly":
        return divmod(self, other)[1]

    def exact_div(self, other) -> "Poly":
        qt, r = divmod(self, other)
        if r:
            raise ArithmeticError("division is not exact")
        return qt

    def divides(self, other: "Poly") -> bool:
        return (other % self).is_zero()

    def monic(self) -> "Poly":
        if not self.c or self.c[-1] == 1:
            return self
        return self.scale(self.F.inv(self.c[-1]))

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def xgcd(self, other: "Poly") -> tuple["Poly", "Poly", "Poly"]:
        """Return (g, s, t) with s*self + t*other = g monic."""
        r0, r1 = self, other
        s0, s1 = self._new((1,)), self._new(())
        t0, t1 = self._new(()), self._new((1,))
        while r1:
            qt, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - qt * s1
            t0, t1 = t1, t0 - qt * t1
        if r0.is_zero():
            return r0, s0, t0
        u = self.F.inv(r0.lc())
        return r0.scale(u), s0.scale(u), t0.scale(u)

    def inv_mod(self, m: "Poly") -> "Poly":
        g, s, _ = self.xgcd(m)
        if not g.is_one():
            raise ZeroDivisionError("not invertible modulo m")
        return s % m

    def pow_mod(self, k: int, m: "Poly") -> "Poly":
        r = self._new((1,)) % m
        b = self % m
        while k:
            if k & 1:
                r = (r * b) % m
            b = (b * b) % m
            k >>= 1
        return r

    def frobenius(self, Q: int) -> "Poly":
        """The Q-th power, for Q a power of the characteristic."""
        F = self.F
        if not self.c:
            return self
        out = [0] * ((len(self.c) - 1) * Q + 1)
        if F.base is None:
            for j, a in enumerate(self.c):
                out[j * Q] = a
        else:
            for j, a in enumerate(self.c):
                out[j * Q] = F.pow(a, Q)
        return self._new(out)

    def derivative(self) -> "Poly":
        F = self.F
        return self._new([F.mul(F.from_int(i), x) for i, x in enumerate(self.c)][1:])

    def __call__(self, x: int) -> int:
        """Evaluate at a field element (Horner)."""
        F = self.F
        acc = 0
        for a in reversed(self.c):
            acc = F.add(F.mul(acc, x), a)
        return acc

    def compose(self, g: "Poly") -> "Poly":
        acc = self._new(())
        for a in reversed(self.c):
            acc = acc * g + self._new((a,))
        return acc

    # -- display --------------------------------------------------------------
    def __str__(self) -> str:
        return format_poly(self.F, self.c, self.var)

    def __repr__(self) -> str:
        return f"Poly({self})"


def format_poly(F: FiniteField, coeffs, var: str = "T") -> str:
    """Render as e.g. ``T^4+T^3+1`` or ``(g+1)*T^2+g``."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        a = coeffs[i]
        if a == 0:
            continue
        s = F.fmt(a)
        if i == 0:
            terms.append(s)
            continue
        mono = var if i == 1 else f"{var}^{i}"
        if a == 1:
            terms.append(mono)
        elif "+" in s:
            terms.append(f"({s})*{mono}")
        else:
            terms.append(f"{s}*{mono}")
    return "+".join(terms) if terms else "0"


_KRONECKER_CUTOFF = 40


def _mul_codes(F: FiniteField, a, b) -> list[int]:
    if not a or not b:
        return []
    # Frobenius images are sparse, so work over the nonzero terms only
    sa = [(i, x) for i, x in enumerate(a) if x]
    sb = [(j, y) for j, y in enumerate(b) if y]
    if F.base is None and min(len(sa), len(sb)) >= _KRONECKER_CUTOFF:
        return _kronecker_mul(F.char, a, b)
    out = [0] * (len(a) + len(b) - 1)
    if F.base is None:
        p = F.char
        for i, x in sa:
            for j, y in sb:
                out[i + j] += x * y
        return [v % p for v in out]
    exp, log = F.exp, F.log
    lb = [(j, log[y]) for j, y in sb]
    if F.char == 2:
        for i, x in sa:
            lx = log[x]
            for j, ly in lb:
                out[i + j] ^= exp[lx + ly]
        return out
    add = F.add
    for i, x in sa:
        lx = log[x]
        for j, ly in lb:
            out[i + j] = add(out[i + j], exp[lx + ly])
    return out


def _kronecker_mul(p: int, a, b) -> list[int]:
    """Prime-field product via one big-integer multiplication."""
    bound = min(len(a), len(b)) * (p - 1) ** 2
    w = max(bound.bit_length(), 1)
    A = int("".join(format(x, f"0{w}b") for x in reversed(a)), 2)
    B = int("".join(format(x, f"0{w}b") for x in reversed(b)), 2)
    C = A * B
    n = len(a) + len(b) - 1
    mask = (1 << w) - 1
    out = [0] * n
    for i in range(n):
        out[i] = (C & mask) % p
        C >>= w
    return out


def monics(F: FiniteField, d: int, var: str = "T"):
    """All monic polynomials of degree d, in a fixed canonical order."""
    for tail in product(range(F.order), repeat=d):
        yield Poly(F, tuple(reversed(tail)) + (1,), var)


def all_polys_below(F: FiniteField, d: int, var: str = "T"):
    """All polynomials of degree < d (including 0)."""
    for tail in product(range(F.order), repeat=d):
        yield Poly(F, tuple(reversed(tail)), var)
