"""Truncated series on the exponent lattice x**(n + m*lam) * (ln x)**l.

Coefficients live in a dense array indexed by (n - n0, m - m0, l).  Two
numeric backends share the same code: numpy complex128, and numpy object
arrays holding gmpy2.mpc values for extended precision.  Precision of the
object backend is whatever gmpy2 context is active while the arithmetic
runs; use :func:`precision` to set it.
"""
from __future__ import annotations

import contextlib
import math

import gmpy2
import numpy as np


def digits_to_bits(digits: int) -> int:
    return int(math.ceil(digits * math.log2(10))) + 8


@contextlib.contextmanager
def precision(digits: int | None):
    """Activate an extended-precision gmpy2 context (no-op for None)."""
    if digits is None:
        yield
        return
    with gmpy2.context(gmpy2.get_context(), precision=digits_to_bits(digits)):
        yield


class Backend:
    """Scalar conversion and elementary functions for one number type."""

    def __init__(self, digits: int | None = None):
        self.digits = digits
        self.dtype = complex if digits is None else object

    @property
    def extended(self) -> bool:
        return self.digits is not None

    def num(self, z):
        if self.digits is None:
            return complex(z)
        if isinstance(z, gmpy2.mpc(0).__class__):
            return z
        if hasattr(z, "real") and hasattr(z, "imag") and not isinstance(z, (int, float, complex)):
            # mpmath or other rich types
            return gmpy2.mpc(gmpy2.mpfr(str(z.real)), gmpy2.mpfr(str(z.imag)))
        return gmpy2.mpc(z)

    def zeros(self, shape):
        if self.digits is None:
            return np.zeros(shape, dtype=complex)
        out = np.empty(shape, dtype=object)
        out.fill(gmpy2.mpc(0))
        return out

    def exp(self, z):
        return np.exp(z) if self.digits is None else gmpy2.exp(z)

    def log(self, z):
        return np.log(z) if self.digits is None else gmpy2.log(z)

    def sqrt(self, z):
        return np.sqrt(complex(z)) if self.digits is None else gmpy2.sqrt(z)

    def abs(self, z):
        return abs(z) if self.digits is None else float(abs(z))

    def to_complex(self, z) -> complex:
        return complex(z) if self.digits is None else complex(float(z.real), float(z.imag))

    def pi(self):
        return math.pi if self.digits is None else gmpy2.const_pi()


DOUBLE = Backend(None)


class LatticeSeries:
    """Finite sum of c[n, m, l] x**(n + m*lam) (ln x)**l, kept up to level ``cap``."""

    __slots__ = ("data", "n0", "m0", "lam", "cap", "backend")

    def __init__(self, data, n0: int, m0: int, lam, cap: int, backend: Backend = DOUBLE):
        self.data = data
        self.n0 = n0
        self.m0 = m0
        self.lam = lam
        self.cap = cap
        self.backend = backend
        if data.shape[0] and n0 + data.shape[0] - 1 > cap:
            self.data = data[: max(cap - n0 + 1, 0)]

    # -- construction -------------------------------------------------
    @classmethod
    def from_dict(cls, coeffs: dict, lam, cap: int, backend: Backend = DOUBLE):
        if not coeffs:
            return cls(backend.zeros((1, 1, 1)), 0, 0, lam, cap, backend)
        ns = [k[0] for k in coeffs]
        ms = [k[1] for k in coeffs]
        ls = [k[2] for k in coeffs]
        n0, m0 = min(ns), min(ms)
        data = backend.zeros((max(ns) - n0 + 1, max(ms) - m0 + 1, max(ls) + 1))
        for (n, m, l), c in coeffs.items():
            if n <= cap:
                data[n - n0, m - m0, l] = backend.num(c)
        return cls(data, n0, m0, lam, cap, backend)

    @classmethod
    def constant(cls, c, lam, cap, backend: Backend = DOUBLE):
        return cls.from_dict({(0, 0, 0): c}, lam, cap, backend)

    @classmethod
    def x(cls, lam, cap, backend: Backend = DOUBLE):
        return cls.from_dict({(1, 0, 0): 1}, lam, cap, backend)

    def with_cap(self, cap: int) -> "LatticeSeries":
        return LatticeSeries(self.data, self.n0, self.m0, self.lam, cap, self.backend)

    # -- inspection ---------------------------------------------------
    def items(self):
        nz = np.argwhere(self.data != 0)
        for i, j, l in nz:
            yield (int(i) + self.n0, int(j) + self.m0, int(l)), self.data[i, j, l]

    def to_dict(self) -> dict:
        return {k: v for k, v in self.items()}

    def level(self, n: int) -> dict:
        """Coefficients {(m, l): c} of level n."""
        i = n - self.n0
        if i < 0 or i >= self.data.shape[0]:
            return {}
        block = self.data[i]
        return {(int(j) + self.m0, int(l)): block[j, l] for j, l in np.argwhere(block != 0)}

    def min_level(self, tol: float = 0.0):
        for i in range(self.data.shape[0]):
            block = self.data[i]
            if tol == 0.0:
                if np.any(block != 0):
                    return i + self.n0
            elif max((self.backend.abs(c) for c in block.ravel()), default=0.0) > tol:
                return i + self.n0
        return None

    # -- arithmetic ---------------------------------------------------
    def _aligned(self, other: "LatticeSeries"):
        n0 = min(self.n0, other.n0)
        m0 = min(self.m0, other.m0)
        n1 = max(self.n0 + self.data.shape[0], other.n0 + other.data.shape[0])
        m1 = max(self.m0 + self.data.shape[1], other.m0 + other.data.shape[1])
        nl = max(self.data.shape[2], other.data.shape[2])
        out = []
        for s in (self, other):
            arr = self.backend.zeros((n1 - n0, m1 - m0, nl))
            a, b, c = s.data.shape
            arr[s.n0 - n0 : s.n0 - n0 + a, s.m0 - m0 : s.m0 - m0 + b, :c] = s.data
            out.append(arr)
        return out[0], out[1], n0, m0

    def _coerce(self, other):
        if isinstance(other, LatticeSeries):
            return other
        return LatticeSeries.constant(other, self.lam, self.cap, self.backend)

    def __add__(self, other):
        other = self._coerce(other)
        a, b, n0, m0 = self._aligned(other)
        return LatticeSeries(a + b, n0, m0, self.lam, min(self.cap, other.cap), self.backend)

    __radd__ = __add__

    def __neg__(self):
        return LatticeSeries(-self.data, self.n0, self.m0, self.lam, self.cap, self.backend)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, LatticeSeries):
            c = self.backend.num(other)
            return LatticeSeries(self.data * c, self.n0, self.m0, self.lam, self.cap, self.backend)
        cap = min(self.cap, other.cap)
        a, b = self, other
        if np.count_nonzero(a.data) > np.count_nonzero(b.data):
            a, b = b, a
        n0 = a.n0 + b.n0
        m0 = a.m0 + b.m0
        na = min(a.data.shape[0] + b.data.shape[0] - 1, max(cap - n0 + 1, 1))
        shape = (na, a.data.shape[1] + b.data.shape[1] - 1, a.data.shape[2] + b.data.shape[2] - 1)
        out = self.backend.zeros(shape)
        nb, mb, lb = b.data.shape
        for i, j, l in np.argwhere(a.data != 0):
            rows = min(nb, na - i)
            if rows <= 0:
                continue
            out[i : i + rows, j : j + mb, l : l + lb] += a.data[i, j, l] * b.data[:rows]
        return LatticeSeries(out, n0, m0, self.lam, cap, self.backend)

    __rmul__ = __mul__

    def exponents(self):
        """Array of n + m*lam matching the first two axes of ``data``."""
        n = np.arange(self.data.shape[0]) + self.n0
        m = np.arange(self.data.shape[1]) + self.m0
        if self.backend.extended:
            lam = self.backend.num(0 if self.lam is None else self.lam)
            ex = np.empty((len(n), len(m)), dtype=object)
            for i, ni in enumerate(n):
                for j, mj in enumerate(m):
                    ex[i, j] = gmpy2.mpc(int(ni)) + int(mj) * lam
            return ex
        lam = 0.0 if self.lam is None else complex(self.lam)
        return n[:, None] + m[None, :] * lam

    def D(self) -> "LatticeSeries":
        """Euler derivative x d/dx."""
        ex = self.exponents()
        d = self.data * ex[:, :, None]
        nl = self.data.shape[2]
        for l in range(1, nl):
            d[:, :, l - 1] = d[:, :, l - 1] + l * self.data[:, :, l]
        return LatticeSeries(d, self.n0, self.m0, self.lam, self.cap, self.backend)

    # -- pointwise evaluation ----------------------------------------------
    def evaluate(self, logx, derivatives: int = 0):
        """Sum the series at a covering point given by ``logx`` = ln x.

        Returns the value, or a tuple (y, Dy, D2y, ...) when derivatives > 0,
        with D = x d/dx.
        """
        bk = self.backend
        L = bk.num(logx)
        ex = self.exponents()
        nl = self.data.shape[2]
        totals = [bk.num(0) for _ in range(derivatives + 1)]
        Lpow = [bk.num(1)]
        for _ in range(nl + derivatives):
            Lpow.append(Lpow[-1] * L)
        for i, j in np.argwhere(np.any(self.data != 0, axis=2)):
            s = ex[i, j]
            e = bk.exp(s * L)
            # poly(L) = sum_l c_l L^l and its derivative chain under D
            coeffs = [self.data[i, j, l] for l in range(nl)]
            for k in range(derivatives + 1):
                acc = bk.num(0)
                for l, c in enumerate(coeffs):
                    if c != 0:
                        acc += c * Lpow[l]
                totals[k] += acc * e
                # D acts on e^{sL} P(L) as e^{sL} (s P + P')
                new = [s * c for c in coeffs] + [bk.num(0)]
                for l in range(1, len(coeffs)):
                    new[l - 1] += l * coeffs[l]
                coeffs = new[: len(coeffs)]
        if derivatives == 0:
            return totals[0]
        return tuple(totals)

    # -- reciprocal ---------------------------------------------------------
    def leading_monomial(self, tol: float = 0.0):
        """(n, m, c) when the lowest nonzero level is a single log-free term, else None."""
        n = self.min_level(tol)
        if n is None:
            return None
        block = self.level(n)
        if tol:
            block = {k: v for k, v in block.items() if self.backend.abs(v) > tol}
        if len(block) != 1:
            return None
        (m, l), c = next(iter(block.items()))
        return (n, m, c) if l == 0 else None

    def shifted(self, dn: int, dm: int) -> "LatticeSeries":
        """Multiply by x**(dn + dm*lam)."""
        return LatticeSeries(self.data, self.n0 + dn, self.m0 + dm, self.lam, self.cap + dn, self.backend)

    def reciprocal(self) -> "LatticeSeries":
        """1/self by Newton iteration, for a series with a monomial leading level.

        The relative truncation order is preserved: if self is known through
        level n0 + K, the result is known through level -n0 + K.
        """
        lead = self.leading_monomial()
        if lead is None:
            raise ValueError("leading level is not a single log-free monomial")
        n0, m0, c = lead
        V = self.shifted(-n0, -m0) * (1 / c)
        K = V.cap
        one = LatticeSeries.constant(1, self.lam, K, self.backend)
        R = one
        for _ in range(int(math.ceil(math.log2(K + 1))) + 2):
            R = R * (2 - V * R)
        return (R * (1 / c)).shifted(-n0, -m0)
