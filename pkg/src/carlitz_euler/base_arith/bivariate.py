"""Dense arithmetic in F_q[T][x] on numpy arrays.

An element is an int64 array of shape (X, W, n): entry [i, j, k] is the
F_p coordinate of g^k in the coefficient of x^i T^j, where F_q = F_p[g]/(h)
and n = [F_q : F_p].  Products go through one big-integer multiplication
(Kronecker substitution) followed by a vectorized unpack.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .finite_field import GF, FiniteField
from .poly import Poly


class Ctx:
    """Conversion data for a fixed F_q."""

    def __init__(self, q: int):
        self.q = q
        self.F: FiniteField = GF(q)
        self.p = self.F.char
        self.n = self.F.degree if self.F.base is not None else 1
        if self.F.base is not None:
            self.h = np.array(self.F.modulus[:-1], dtype=np.int64)
        else:
            self.h = None
        digits = np.zeros((q, self.n), dtype=np.int64)
        for a in range(q):
            x = a
            for k in range(self.n):
                x, digits[a, k] = divmod(x, self.p)
        self.digits = digits
        self.weights = np.array([self.p ** k for k in range(self.n)], dtype=np.int64)

    # -- conversions -------------------------------------------------------
    def poly_to_row(self, a: Poly, width: int | None = None) -> np.ndarray:
        w = len(a.c) if width is None else width
        out = np.zeros((max(w, 1), self.n), dtype=np.int64)
        if a.c:
            out[: len(a.c)] = self.digits[list(a.c)]
        return out

    def row_to_poly(self, row: np.ndarray, var: str = "T") -> Poly:
        codes = (row % self.p) @ self.weights
        return Poly(self.F, [int(c) for c in codes], var)

    def polys_to_array(self, polys, width: int | None = None) -> np.ndarray:
        w = max([len(a.c) for a in polys] + [1]) if width is None else width
        out = np.zeros((len(polys), w, self.n), dtype=np.int64)
        for i, a in enumerate(polys):
            if a.c:
                out[i, : len(a.c)] = self.digits[list(a.c)]
        return out

    def array_to_polys(self, A: np.ndarray, var: str = "T") -> list[Poly]:
        codes = (A % self.p) @ self.weights
        return [Poly(self.F, [int(c) for c in row], var) for row in codes]

    @property
    def mulmats(self) -> np.ndarray:
        """mulmats[c] is the F_p matrix of multiplication by the code c."""
        if not hasattr(self, "_mulmats"):
            n, q = self.n, self.q
            M = np.zeros((q, n, n), dtype=np.int64)
            for c in range(q):
                for k in range(n):
                    M[c, k] = self.digits[self.F.mul(c, self.p ** k)]
            self._mulmats = M
        return self._mulmats

    def scalar_divmod(self, A: np.ndarray, m: Poly) -> tuple[np.ndarray, np.ndarray]:
        """Coefficientwise division in F_q[T] by a monic polynomial m."""
        d = m.deg
        X, W, n = A.shape
        if W <= d or X == 0:
            return np.zeros((X, 1, n), dtype=np.int64), A % self.p
        mats = self.mulmats[list(m.c[:d])]  # (d, n, n)
        R = A % self.p
        Q = np.zeros((X, W - d, n), dtype=np.int64)
        p = self.p
        for t in range(W - 1, d - 1, -1):
            c = R[:, t] % p
            if not c.any():
                continue
            Q[:, t - d] = c
            R[:, t - d:t] -= np.einsum("xk,dkj->xdj", c, mats)
            R[:, t] = 0
        return Q % p, R[:, :d] % p

    # -- normal form ---------------------------------------------------------
    def trim(self, A: np.ndarray) -> np.ndarray:
        """Reduce mod p and drop zero trailing rows and columns."""
        A = A % self.p
        nz = A.any(axis=2)
        rows = np.flatnonzero(nz.any(axis=1))
        if rows.size == 0:
            return np.zeros((0, 1, self.n), dtype=np.int64)
        cols = np.flatnonzero(nz.any(axis=0))
        return A[: rows[-1] + 1, : cols[-1] + 1]

    def g_reduce(self, A: np.ndarray) -> np.ndarray:
        """Reduce the last axis (length 2n-1) modulo h."""
        n = self.n
        if n == 1:
            return A
        A = A.copy()
        for k in range(A.shape[-1] - 1, n - 1, -1):
            c = A[..., k]
            if c.any():
                A[..., k - n:k] -= c[..., None] * self.h
        return A[..., :n]

    # -- multiplication ----------------------------------------------------------
    def mul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        """Product of two (X, W, n) arrays in F_q[T][x], reduced mod p."""
        XA, WA, n = A.shape
        XB, WB, _ = B.shape
        if XA == 0 or XB == 0:
            return np.zeros((0, 1, n), dtype=np.int64)
        G = 2 * n - 1
        WC = WA + WB - 1
        XC = XA + XB - 1
        bound = min(XA, XB) * min(WA, WB) * n * (self.p - 1) ** 2
        nbytes = max(1, (bound.bit_length() + 7) // 8)
        if nbytes > 8:
            raise OverflowError("coefficient growth exceeds 64-bit slots")
        dt = {1: "<u1", 2: "<u2", 3: "<u4", 4: "<u4"}.get(nbytes, "<u8")
        width = np.dtype(dt).itemsize
        SX = WC * G

        def pack(M, X, W):
            buf = np.zeros((X, WC, G), dtype=dt)
            buf[:, :W, :n] = M % self.p
            return int.from_bytes(buf.tobytes(), "little")

        C = pack(A, XA, WA) * pack(B, XB, WB)
        total = XC * SX
        raw = C.to_bytes(total * width, "little")
        out = np.frombuffer(raw, dtype=dt).astype(np.int64).reshape(XC, WC, G)
        return self.g_reduce(out) % self.p

    def reduce(self, A: np.ndarray, psi: np.ndarray) -> np.ndarray:
        """Remainder of A modulo psi, monic in x of degree D = len(psi)-1."""
        D = psi.shape[0] - 1
        if A.shape[0] <= D:
            return A % self.p
        body = psi[:D]
        WP = body.shape[1]
        W = A.shape[1]
        # each reduction step can widen the T-range by WP - 1
        steps = A.shape[0] - D
        width = W + steps * (WP - 1)
        R = np.zeros((A.shape[0], width, self.n), dtype=np.int64)
        R[:, :W] = A
        for j in range(A.shape[0] - 1, D - 1, -1):
            r = R[j] % self.p
            nzc = np.flatnonzero(r.any(axis=1))
            if nzc.size == 0:
                continue
            r = r[: nzc[-1] + 1]
            prod = self.mul(r[None], body)
            R[j - D:j, : prod.shape[1]] -= prod
        return R[:D] % self.p


@lru_cache(maxsize=None)
def ctx(q: int) -> Ctx:
    return Ctx(q)


class XPoly:
    """A polynomial in x with coefficients in F_q[T], kept as an array."""

    __slots__ = ("C", "a")

    def __init__(self, C: Ctx, a: np.ndarray):
        self.C = C
        self.a = C.trim(a)

    @classmethod
    def from_polys(cls, C: Ctx, polys) -> "XPoly":
        return cls(C, C.polys_to_array(list(polys)))

    @classmethod
    def q_poly(cls, C: Ctx, coeffs) -> "XPoly":
        """sum_i coeffs[i] x^(q^i) for polynomials coeffs[i] in F_q[T]."""
        coeffs = list(coeffs)
        if not coeffs:
            return cls(C, np.zeros((0, 1, C.n), dtype=np.int64))
        polys = [Poly(C.F, (), "T")] * (C.q ** (len(coeffs) - 1) + 1)
        for i, c in enumerate(coeffs):
            polys[C.q ** i] = c
        return cls.from_polys(C, polys)

    @property
    def deg(self) -> int:
        return self.a.shape[0] - 1

    def coeffs(self) -> list[Poly]:
        return self.C.array_to_polys(self.a)

    def __mul__(self, o: "XPoly") -> "XPoly":
        return XPoly(self.C, self.C.mul(self.a, o.a))

    def __sub__(self, o: "XPoly") -> "XPoly":
        X = max(self.a.shape[0], o.a.shape[0])
        W = max(self.a.shape[1], o.a.shape[1])
        out = np.zeros((X, W, self.C.n), dtype=np.int64)
        out[: self.a.shape[0], : self.a.shape[1]] += self.a
        out[: o.a.shape[0], : o.a.shape[1]] -= o.a
        return XPoly(self.C, out)

    def __eq__(self, o) -> bool:
        return isinstance(o, XPoly) and self.a.shape == o.a.shape and bool((self.a == o.a).all())

    def divmod_monic(self, B: "XPoly") -> tuple["XPoly", "XPoly"]:
        """Division by B, which must be monic in x."""
        C = self.C
        D = B.deg
        lead = B.a[D]
        if not (lead[0, 0] == 1 and (lead[1:] == 0).all() and (lead[0, 1:] == 0).all()):
            raise ValueError("divisor must be monic in x")
        A = self.a
        if A.shape[0] <= D:
            return XPoly(C, np.zeros((0, 1, C.n), dtype=np.int64)), self
        body = B.a[:D]
        WB = B.a.shape[1]
        steps = A.shape[0] - D
        width = A.shape[1] + steps * (WB - 1)
        R = np.zeros((A.shape[0], width, C.n), dtype=np.int64)
        R[:, : A.shape[1]] = A
        Q = np.zeros((steps, width, C.n), dtype=np.int64)
        for j in range(A.shape[0] - 1, D - 1, -1):
            r = R[j] % C.p
            nzc = np.flatnonzero(r.any(axis=1))
            if nzc.size == 0:
                continue
            r = r[: nzc[-1] + 1]
            Q[j - D, : r.shape[0]] = r
            prod = C.mul(r[None], body)
            R[j - D:j, : prod.shape[1]] -= prod
            R[j] = 0
        return XPoly(C, Q), XPoly(C, R[:D])

    def exact_div(self, B: "XPoly") -> "XPoly":
        Q, R = self.divmod_monic(B)
        if R.a.shape[0]:
            raise ArithmeticError("x-polynomial division is not exact")
        return Q
