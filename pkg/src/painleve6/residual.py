"""PVI with denominators cleared, as an explicit polynomial.

With D = x d/dx the equation multiplied by 2 x^2 (x-1)^2 y (y-1) (y-x)
becomes a polynomial R(x, y, Dy, D^2 y) = 0.  The reciprocal chart w = 1/y
gives a second polynomial, w^6 R(x, 1/w, ...), used by the inverse classes.
Both are stored as sparse dicts {(i, j, k, l): c} for x^i u^j (Du)^k (D^2u)^l.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field

from .lattice import LatticeSeries


class Poly:
    """Sparse polynomial in (x, u, Du, D2u) with complex coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def var(cls, idx: int) -> "Poly":
        e = [0, 0, 0, 0]
        e[idx] = 1
        return cls({tuple(e): 1})

    def _c(self, o):
        return o if isinstance(o, Poly) else Poly({(0, 0, 0, 0): o})

    def __add__(self, o):
        o = self._c(o)
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t.get(k, 0) + v
        return Poly(t)

    __radd__ = __add__

    def __neg__(self):
        return Poly({k: -v for k, v in self.terms.items()})

    def __sub__(self, o):
        return self + (-self._c(o))

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        t = defaultdict(complex)
        for k1, v1 in self.terms.items():
            for k2, v2 in o.terms.items():
                t[tuple(a + b for a, b in zip(k1, k2))] += v1 * v2
        return Poly(dict(t))

    __rmul__ = __mul__

    def diff(self, idx: int) -> "Poly":
        t = {}
        for k, v in self.terms.items():
            if k[idx]:
                kk = list(k)
                kk[idx] -= 1
                t[tuple(kk)] = t.get(tuple(kk), 0) + v * k[idx]
        return Poly(t)

    def degree(self) -> int:
        return max((k[1] + k[2] + k[3] for k in self.terms), default=0)

    def __call__(self, x, u, du, d2u):
        """Pointwise evaluation with scalars."""
        total = 0
        for (i, j, k, l), c in self.terms.items():
            total += c * x**i * u**j * du**k * d2u**l
        return total


def _is_rich(v) -> bool:
    return not isinstance(v, (int, float, complex)) and not hasattr(v, "dtype")


def _pvi_y(a, b, g, d) -> Poly:
    x, y, y1, y2 = (Poly.var(i) for i in range(4))
    xm = x - 1
    yy = y * (y - 1) * (y - x)
    R = 2 * xm * xm * yy * (y2 - y1)
    R = R - xm * xm * (3 * y * y - 2 * (1 + x) * y + x) * y1 * y1
    R = R + 2 * (2 * x - 1) * xm * yy * y1
    R = R + 2 * x * xm * xm * y * (y - 1) * y1
    pot = (a * y * y * (y - 1) * (y - 1) * (y - x) * (y - x)
           + b * x * (y - 1) * (y - 1) * (y - x) * (y - x)
           + g * xm * y * y * (y - x) * (y - x)
           + d * x * xm * y * y * (y - 1) * (y - 1))
    return R - 2 * pot


def _pvi_w(a, b, g, d) -> Poly:
    x, w, w1, w2 = (Poly.var(i) for i in range(4))
    xm = x - 1
    one_w = 1 - w
    one_xw = 1 - x * w
    R = 2 * xm * xm * one_w * one_xw * (2 * w1 * w1 - w * w2 + w * w1)
    R = R - xm * xm * (3 - 2 * (1 + x) * w + x * w * w) * w1 * w1
    R = R - 2 * (2 * x - 1) * xm * one_w * one_xw * w * w1
    R = R - 2 * x * xm * xm * one_w * w * w * w1
    pot = (a * one_w * one_w * one_xw * one_xw
           + b * x * w * w * one_w * one_w * one_xw * one_xw
           + g * xm * w * w * one_xw * one_xw
           + d * x * xm * w * w * one_w * one_w)
    return R - 2 * pot


@dataclass
class PviResidualForm:
    """Cleared PVI for fixed (alpha, beta, gamma, delta) in chart 'y' or 'w'."""

    alpha: complex
    beta: complex
    gamma: complex
    delta: complex
    chart: str = "y"
    poly: Poly = field(init=False)

    def __post_init__(self):
        # keep extended-precision scalars as they are; everything else becomes complex
        args = tuple(v if _is_rich(v) else complex(v) for v in (self.alpha, self.beta, self.gamma, self.delta))
        if self.chart == "y":
            self.poly = _pvi_y(*args)
        elif self.chart == "w":
            self.poly = _pvi_w(*args)
        else:
            raise ValueError(f"unknown chart {self.chart!r}")

    def pointwise(self, x, u, du, d2u):
        return self.poly(x, u, du, d2u)

    def partials(self):
        return [self.poly.diff(i) for i in (1, 2, 3)]

    def on_series(self, u: LatticeSeries, poly: Poly | None = None) -> LatticeSeries:
        """Substitute a lattice series (with cap already set) into the polynomial."""
        return substitute(self.poly if poly is None else poly, u)


def substitute(poly: Poly, u: LatticeSeries) -> LatticeSeries:
    du = u.D()
    d2u = du.D()
    bk, lam, cap = u.backend, u.lam, u.cap
    groups: dict = defaultdict(dict)
    for (i, j, k, l), c in poly.terms.items():
        groups[(j, k, l)][(i, 0, 0)] = c
    cache = {}

    def power(s, key, n):
        if n == 0:
            return None
        if (key, n) not in cache:
            prev = power(s, key, n - 1)
            cache[(key, n)] = s if prev is None else prev * s
        return cache[(key, n)]

    total = None
    for (j, k, l), xpoly in groups.items():
        term = LatticeSeries.from_dict(xpoly, lam, cap, bk)
        for s, key, n in ((u, "u", j), (du, "du", k), (d2u, "d2u", l)):
            p = power(s, key, n)
            if p is not None:
                term = term * p
        total = term if total is None else total + term
    return total
