"""Table-driven finite fields.

Every field is a prime field F_p or an extension base[z]/(f) of another
finite field.  Elements are plain ints: the base-|base| digits of an
element are its coordinates in the basis 1, z, z^2, ...  In particular
the codes below |base| are exactly the embedded base field, so towers
F_p < F_q < F_Q share codes for their common elements.

Multiplication goes through exp/log tables.  Addition is XOR in
characteristic 2 and Zech-logarithm lookups otherwise.
"""

from __future__ import annotations

from functools import lru_cache

from .intmath import factorint


def _int_digits(x: int, base: int, n: int) -> list[int]:
    out = []
    for _ in range(n):
        x, r = divmod(x, base)
        out.append(r)
    return out


def _digits_int(ds, base: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * base + d
    return x


class FiniteField:
    """A finite field with integer-coded elements.

    Build prime fields with ``FiniteField.prime(p)`` and extensions with
    ``FiniteField.extension(base, modulus)``; ``GF(q)`` returns the
    canonical field of order q.
    """

    def __init__(self, order: int, char: int, base: "FiniteField | None",
                 modulus: tuple[int, ...] | None, names: str = "g"):
        self.order = order
        self.char = char
        self.base = base
        self.modulus = modulus
        self.name = names
        self.degree = 1 if base is None else len(modulus) - 1
        self._build_tables()

    # -- construction -----------------------------------------------------
    @classmethod
    def prime(cls, p: int) -> "FiniteField":
        return cls(p, p, None, None)

    @classmethod
    def extension(cls, base: "FiniteField", modulus, name: str = "g") -> "FiniteField":
        """Extension base[z]/(modulus); modulus is a monic irreducible
        given as base codes, constant term first."""
        modulus = tuple(modulus)
        if modulus[-1] != 1:
            raise ValueError("modulus must be monic")
        return cls(base.order ** (len(modulus) - 1), base.char, base, modulus, name)

    def _slow_mul(self, a: int, b: int) -> int:
        B = self.base
        n = self.degree
        da = _int_digits(a, B.order, n)
        db = _int_digits(b, B.order, n)
        prod = [0] * (2 * n - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    if y:
                        prod[i + j] = B.add(prod[i + j], B.mul(x, y))
        f = self.modulus
        for k in range(2 * n - 2, n - 1, -1):
            c = prod[k]
            if c:
                for j in range(n):
                    prod[k - n + j] = B.sub(prod[k - n + j], B.mul(c, f[j]))
                prod[k] = 0
        return _digits_int(prod[:n], B.order)

    def _slow_add(self, a: int, b: int) -> int:
        B = self.base
        n = self.degree
        da = _int_digits(a, B.order, n)
        db = _int_digits(b, B.order, n)
        return _digits_int([B.add(x, y) for x, y in zip(da, db)], B.order)

    def _build_tables(self) -> None:
        Q = self.order
        if self.base is None:
            p = self.char
            mul = lambda a, b: a * b % p
            add = lambda a, b: (a + b) % p
        else:
            mul, add = self._slow_mul, self._slow_add
        primes = list(factorint(Q - 1)) if Q > 2 else []
        gen = None
        for cand in range(1, Q):
            if cand == 1 and Q > 2:
                continue
            if all(self._pow_with(mul, cand, (Q - 1) // r) != 1 for r in primes):
                gen = cand
                break
        exp = [0] * (2 * (Q - 1))
        log = [0] * Q
        x = 1
        for i in range(Q - 1):
            exp[i] = x
            log[x] = i
            x = mul(x, gen)
        for i in range(Q - 1, 2 * (Q - 1)):
            exp[i] = exp[i - (Q - 1)]
        self.exp, self.log, self.gen = exp, log, gen
        if self.char == 2 or self.base is None:
            self.zech = None
        else:
            # zech[i] = log(1 + gen^i), or -1 when 1 + gen^i = 0
            z = [0] * (Q - 1)
            for i in range(Q - 1):
                s = add(1, exp[i])
                z[i] = -1 if s == 0 else log[s]
            self.zech = z
        self.minus_one = exp[(Q - 1) // 2] if self.char != 2 else 1

    @staticmethod
    def _pow_with(mul, a: int, k: int) -> int:
        r = 1
        while k:
            if k & 1:
                r = mul(r, a)
            a = mul(a, a)
            k >>= 1
        return r

    # -- arithmetic on codes -------------------------------------------------
    def add(self, a: int, b: int) -> int:
        if self.char == 2:
            return a ^ b
        if self.base is None:
            return (a + b) % self.char
        if a == 0:
            return b
        if b == 0:
            return a
        la = self.log[a]
        z = self.zech[(self.log[b] - la) % (self.order - 1)]
        return 0 if z < 0 else self.exp[la + z]

    def neg(self, a: int) -> int:
        if self.char == 2 or a == 0:
            return a
        if self.base is None:
            return self.char - a
        return self.exp[self.log[a] + (self.order - 1) // 2]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in finite field")
        return self.exp[(self.order - 1 - self.log[a]) % (self.order - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, k: int) -> int:
        if a == 0:
            if k < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if k == 0 else 0
        return self.exp[(self.log[a] * k) % (self.order - 1)]

    def from_int(self, n: int) -> int:
        """Image of the integer n in the prime subfield."""
        return n % self.char

    def is_square(self, a: int) -> bool:
        return a == 0 or self.char == 2 or self.log[a] % 2 == 0

    def elements(self) -> range:
        return range(self.order)

    def coords(self, a: int) -> list[int]:
        """Coordinates of a over the base field."""
        return _int_digits(a, self.base.order, self.degree)

    def prime_coords(self, a: int, n: int | None = None) -> list[int]:
        """Coordinates of a over the prime field."""
        if n is None:
            n = 1
            o = self.char
            while o < self.order:
                o *= self.char
                n += 1
        return _int_digits(a, self.char, n)

    # -- display -------------------------------------------------------------
    def fmt(self, a: int) -> str:
        if self.base is None:
            return str(a)
        terms = []
        for i, c in reversed(list(enumerate(self.coords(a)))):
            if c == 0:
                continue
            cs = self.base.fmt(c)
            if i == 0:
                terms.append(cs)
                continue
            mono = self.name if i == 1 else f"{self.name}^{i}"
            if c == 1:
                terms.append(mono)
            elif self.base.base is None:
                terms.append(f"{cs}*{mono}")
            else:
                terms.append(f"({cs})*{mono}")
        return "+".join(terms) if terms else "0"

    def __repr__(self) -> str:
        return f"GF({self.order})"


def _is_irreducible_small(F: FiniteField, f: tuple[int, ...]) -> bool:
    """Root-free and factor-free test by brute force, for small degrees."""
    d = len(f) - 1
    for k in range(1, d // 2 + 1):
        # every monic polynomial of degree k
        for idx in range(F.order ** k):
            g = tuple(_int_digits(idx, F.order, k)) + (1,)
            if _divides(F, g, f):
                return False
    return True


def _divides(F: FiniteField, g, f) -> bool:
    r = list(f)
    dg = len(g) - 1
    for k in range(len(r) - 1, dg - 1, -1):
        c = r[k]
        if c:
            for j in range(dg + 1):
                r[k - dg + j] = F.sub(r[k - dg + j], F.mul(c, g[j]))
    return not any(r[:dg])


@lru_cache(maxsize=None)
def GF(q: int) -> FiniteField:
    """The canonical field of order q (a prime power).

    For q = p^n with n > 1 the modulus is the first monic irreducible of
    degree n over F_p in lexicographic order of its coefficient list,
    read from the top, whose root generates the multiplicative group.
    """
    fac = factorint(q)
    if len(fac) != 1:
        raise ValueError(f"{q} is not a prime power")
    (p, n), = fac.items()
    Fp = FiniteField.prime(p)
    if n == 1:
        return Fp
    for idx in range(p ** n):
        f = tuple(_int_digits(idx, p, n)) + (1,)
        if f[0] == 0 or not _is_irreducible_small(Fp, f):
            continue
        E = FiniteField.extension(Fp, f)
        if E.gen == p:  # the class of z is primitive
            return E
    raise AssertionError("no primitive polynomial found")
