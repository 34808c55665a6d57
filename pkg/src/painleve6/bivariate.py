"""Truncated power series in two variables, modulo (u^(N+1), w^(N+1)).

Both convergent representations near x = 0 are power series in two small
quantities whose product is proportional to x; this ring carries them.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.signal import convolve2d


class Bivariate:
    __slots__ = ("c",)

    def __init__(self, c):
        self.c = np.asarray(c, dtype=complex)

    @property
    def N(self) -> int:
        return self.c.shape[0] - 1

    @classmethod
    def zeros(cls, N: int) -> "Bivariate":
        return cls(np.zeros((N + 1, N + 1), complex))

    @classmethod
    def const(cls, v, N: int) -> "Bivariate":
        b = cls.zeros(N)
        b.c[0, 0] = v
        return b

    @classmethod
    def monomial(cls, i: int, j: int, N: int, v=1.0) -> "Bivariate":
        b = cls.zeros(N)
        if i <= N and j <= N:
            b.c[i, j] = v
        return b

    @classmethod
    def from_diagonal(cls, coeffs, N: int, scale=1.0) -> "Bivariate":
        """sum_k coeffs[k] (scale u w)^k: a power series in the product u w."""
        b = cls.zeros(N)
        for k, v in enumerate(coeffs[: N + 1]):
            b.c[k, k] = v * scale**k
        return b

    def _lift(self, o):
        return o if isinstance(o, Bivariate) else Bivariate.const(o, self.N)

    def __add__(self, o):
        return Bivariate(self.c + self._lift(o).c)

    __radd__ = __add__

    def __sub__(self, o):
        return Bivariate(self.c - self._lift(o).c)

    def __rsub__(self, o):
        return Bivariate(self._lift(o).c - self.c)

    def __neg__(self):
        return Bivariate(-self.c)

    def __mul__(self, o):
        if not isinstance(o, Bivariate):
            return Bivariate(self.c * o)
        n = self.N + 1
        return Bivariate(convolve2d(self.c, o.c)[:n, :n])

    __rmul__ = __mul__

    def __truediv__(self, o):
        if not isinstance(o, Bivariate):
            return Bivariate(self.c / o)
        return self * o.inverse()

    def __rtruediv__(self, o):
        return self._lift(o) * self.inverse()

    def __pow__(self, k: int):
        out = Bivariate.const(1.0, self.N)
        for _ in range(k):
            out = out * self
        return out

    @property
    def c0(self) -> complex:
        return complex(self.c[0, 0])

    def _nilpotent_steps(self) -> int:
        return 2 * self.N + 1

    def inverse(self) -> "Bivariate":
        c0 = self.c0
        if c0 == 0:
            raise ZeroDivisionError("series without constant term is not invertible")
        R = Bivariate.const(1 / c0, self.N)
        for _ in range(int(math.ceil(math.log2(self._nilpotent_steps() + 1))) + 1):
            R = R * (2 - self * R)
        return R

    def log(self) -> "Bivariate":
        """Principal log of the constant term plus the series log(1 + z)."""
        c0 = self.c0
        z = self / c0 - 1
        out = Bivariate.const(np.log(c0), self.N)
        p = Bivariate.const(1.0, self.N)
        for k in range(1, self._nilpotent_steps() + 1):
            p = p * z
            out = out + p * ((-1) ** (k + 1) / k)
        return out

    def exp(self) -> "Bivariate":
        c0 = self.c0
        z = self - c0
        out = Bivariate.const(1.0, self.N)
        p = Bivariate.const(1.0, self.N)
        for k in range(1, self._nilpotent_steps() + 1):
            p = p * z / k
            out = out + p
        return out * np.exp(c0)

    def power(self, e) -> "Bivariate":
        return (self.log() * e).exp()

    def sqrt(self) -> "Bivariate":
        return self.power(0.5)

    def divide_w(self) -> "Bivariate":
        """Exact division by w; the top w-degree becomes unknown and is zeroed."""
        out = np.zeros_like(self.c)
        out[:, :-1] = self.c[:, 1:]
        return Bivariate(out)

    def scale_vars(self, su, sw) -> "Bivariate":
        i = np.arange(self.N + 1)
        return Bivariate(self.c * np.power(complex(su), i)[:, None] * np.power(complex(sw), i)[None, :])

    def __call__(self, u, w) -> complex:
        i = np.arange(self.N + 1)
        return complex(np.power(complex(u), i) @ self.c @ np.power(complex(w), i))

    def truncated(self, M: int) -> "Bivariate":
        out = self.c.copy()
        out[M + 1:, :] = 0
        out[:, M + 1:] = 0
        return Bivariate(out)
