"""Elliptic representation y = P(nu1 w1 + nu2 w2 + v; w1, w2) + (1 + x)/3.

w1(x) = (pi/2) F(1/2, 1/2, 1; x) and w2(x) = i (pi/2) F(1/2, 1/2, 1; 1 - x) are
the half periods; P is the Weierstrass function, summed through the nome
q = exp(i pi w2/w1).  Near x = 0, v is a power series in

    s2 = e^{-i pi nu1} (x/16)^(1 - nu2),   s3 = e^{i pi nu1} (x/16)^nu2,

with s2 s3 = x/16.  Its coefficients follow from the cosh-squared solution
with sigma = 1 - nu2 and a = -4 e^{i pi nu1} 16^(-nu2), for which
a x^(1-sigma) = -4 s3 and x^sigma / a = -4 s2, by inverting the q-expansion
of P order by order.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import mpmath
import numpy as np

from .bivariate import Bivariate
from .covering import CoveringPoint
from .errors import ConditionViolation, DegenerateLattice, LatticePoint, NearSingularity, OutsideDomain
from .params import ThetaClass
from .shimomura import y_bivariate

LN16 = 4 * math.log(2)
DEFAULT_R = 0.1
DEFAULT_ORDER = 8


# -- hypergeometric half periods ---------------------------------------------------


@lru_cache(maxsize=None)
def _coeffs(n: int):
    """c_k = ((1/2)_k / k!)^2 and d_k = 2 psi(k+1) - 2 psi(k+1/2), k < n."""
    c = np.empty(n)
    d = np.empty(n)
    c[0], d[0] = 1.0, LN16
    for k in range(1, n):
        c[k] = c[k - 1] * ((k - 0.5) / k) ** 2
        d[k] = d[k - 1] + 2.0 / k - 4.0 / (2 * k - 1)
    return c, d


def _nterms(z: complex) -> int:
    az = abs(z)
    if az < 1e-300:
        return 1
    return int(min(4000, max(4, math.ceil(-41.5 / math.log(az)) + 2)))


def _series(z: complex) -> complex:
    n = _nterms(z)
    c, _ = _coeffs(n)
    return complex(np.polyval(c[::-1], z))


def _log_series(z: complex, logz: complex) -> complex:
    """pi F(1/2,1/2;1;1-z) = sum c_k z^k (d_k - ln z), with the given branch of ln z."""
    n = _nterms(z)
    c, d = _coeffs(n)
    return complex(np.polyval((c * d)[::-1], z) - logz * np.polyval(c[::-1], z))


def hyp_half(z) -> complex:
    """F(1/2, 1/2, 1; z) on the principal sheet (cut [1, +inf))."""
    z = complex(z)
    if abs(1 - z) < 1e-12:
        raise NearSingularity("F(1/2,1/2;1;z) diverges at z = 1", z=z)
    if abs(z) <= 0.5:
        return _series(z)
    w = 1 - z
    if abs(w) <= 0.5:
        return _log_series(w, cmath.log(w)) / math.pi
    p = z / (z - 1)
    if abs(p) <= 0.5:
        return _series(p) / cmath.sqrt(1 - z)
    return complex(mpmath.hyp2f1(0.5, 0.5, 1, z))


@dataclass(frozen=True)
class HalfPeriods:
    omega1: complex
    omega2: complex

    @property
    def tau(self) -> complex:
        return self.omega2 / self.omega1


def half_periods(x) -> HalfPeriods:
    """w1, w2 at x.  For |x| <= 1/2 the logarithm in w2 follows the covering point."""
    if isinstance(x, (CoveringPoint, tuple, list)):
        cp = CoveringPoint.of(x)
        z, logz = cp.value, cp.log
    else:
        z = complex(x)
        if z == 0:
            raise NearSingularity("w2 diverges at x = 0")
        logz = cmath.log(z)
    if abs(1 - z) < 1e-12:
        raise NearSingularity("w1 diverges at x = 1", x=z)
    w1 = math.pi / 2 * hyp_half(z)
    if abs(z) <= 0.5:
        w2 = 0.5j * _log_series(z, logz)
    else:
        w2 = 0.5j * math.pi * hyp_half(1 - z)
    return HalfPeriods(w1, w2)


# -- Weierstrass function ----------------------------------------------------------


def _nome_terms(q: complex, growth: float) -> int:
    aq = abs(q) ** 2 * growth
    if aq == 0:
        return 1
    if aq >= 1:
        raise DegenerateLattice("nome series does not converge", q=q)
    return int(min(2000, math.ceil(-41.5 / math.log(aq)) + 2))


def _reduce(z: complex, w1: complex, w2: complex):
    tau = w2 / w1
    if tau.imag <= 1e-12:
        raise DegenerateLattice("Im(w2/w1) must be positive", tau=tau)
    zeta = z / (2 * w1)
    k = round(zeta.imag / tau.imag)
    zeta -= k * tau
    m = round(zeta.real)
    zeta -= m
    return zeta, tau


def weierstrass_p(z, w1, w2, derivative: bool = False):
    """P(z; w1, w2) (and P'(z) when asked) for half periods w1, w2."""
    z, w1, w2 = complex(z), complex(w1), complex(w2)
    zeta, tau = _reduce(z, w1, w2)
    if abs(zeta) < 1e-13:
        raise LatticePoint("z is a lattice point (pole of P)", z=z)
    q = cmath.exp(1j * math.pi * tau)
    W = cmath.exp(2j * math.pi * zeta)
    c = (math.pi / (2 * w1)) ** 2
    g = max(abs(W), 1 / abs(W))
    n = np.arange(1, _nome_terms(q, g) + 1)
    q2n = q ** (2 * n)
    lam = n * q2n / (1 - q2n)
    S = lam.sum()
    Wn, Wm = W**n, W ** (-n)
    p = c * (-1 / 3 + 8 * S - 4 * W / (1 - W) ** 2 - 4 * np.sum(lam * (Wn + Wm)))
    if not derivative:
        return complex(p)
    dp = c * (1j * math.pi / w1) * (-4 * W * (1 + W) / (1 - W) ** 3 - 4 * np.sum(n * lam * (Wn - Wm)))
    return complex(p), complex(dp)


def invariants(w1, w2) -> tuple:
    """(g2, g3) from the nome."""
    w1, w2 = complex(w1), complex(w2)
    tau = w2 / w1
    if tau.imag <= 1e-12:
        raise DegenerateLattice("Im(w2/w1) must be positive", tau=tau)
    q = cmath.exp(1j * math.pi * tau)
    n = np.arange(1, _nome_terms(q, 1.0) + 1)
    q2n = q ** (2 * n)
    c = (math.pi / (2 * w1)) ** 2
    g2 = c**2 * 4 / 3 * (1 + 240 * np.sum(n**3 * q2n / (1 - q2n)))
    g3 = c**3 * 8 / 27 * (1 - 504 * np.sum(n**5 * q2n / (1 - q2n)))
    return complex(g2), complex(g3)


# -- dictionary with the cosh-squared representation -----------------------------------


def shimomura_constants(nu1, nu2) -> tuple:
    """(sigma, a) describing the same solution."""
    nu1, nu2 = complex(nu1), complex(nu2)
    return 1 - nu2, -4 * cmath.exp(1j * math.pi * nu1 - nu2 * LN16)


def elliptic_constants(sigma, a) -> tuple:
    """(nu1, nu2) with the principal logarithm; nu1 is defined modulo 2."""
    sigma, a = complex(sigma), complex(a)
    nu2 = 1 - sigma
    nu1 = cmath.log(-a / 4 * cmath.exp(nu2 * LN16)) / (1j * math.pi)
    return nu1, nu2


def nu2_from_trace(p0x) -> complex:
    """nu2 with 2 cos(pi nu2) = -p0x, 0 <= Re nu2 <= 1."""
    s = complex(np.arccos(-complex(p0x) / 2) / np.pi)
    return -s if s.real < 0 else s


# -- the v series ---------------------------------------------------------------


def _x_series(coeffs, N):
    return Bivariate.from_diagonal(coeffs, N, scale=16.0)


def _check_nu2(nu2):
    n2 = complex(nu2)
    if abs(n2.imag) < 1e-14 and not 0 < n2.real < 1:
        if 1 < n2.real < 2:
            raise ConditionViolation("for real nu2 in (1, 2) use the relabelled constants (-nu1, 2 - nu2)", nu2=n2)
        raise ConditionViolation("nu2 must be non-real or real in (0, 1)", nu2=n2)
    return n2


@dataclass
class EllipticBranch:
    nu1: complex
    nu2: complex
    theta: ThetaClass
    order: int
    V: Bivariate  # v = sum V[i, j] s2^i s3^j
    r: float = DEFAULT_R

    def variables(self, x) -> tuple:
        L = CoveringPoint.of(x).log - LN16
        e = cmath.exp(1j * math.pi * self.nu1)
        return cmath.exp((1 - self.nu2) * L) / e, e * cmath.exp(self.nu2 * L)

    def v(self, x) -> complex:
        s2, s3 = self.variables(x)
        return self.V(s2, s3)

    def families(self) -> dict:
        """a_n x^n, b_nm x^n s2^m, c_nm x^n s3^m (x = 16 s2 s3)."""
        out = {"a": {}, "b": {}, "c": {}}
        for i in range(self.order + 1):
            for j in range(self.order + 1):
                v = complex(self.V.c[i, j])
                n = min(i, j)
                v = v / 16.0**n
                if i == j and i >= 1:
                    out["a"][i] = v
                elif i > j:
                    out["b"][(n, i - j)] = v
                elif j > i:
                    out["c"][(n, j - i)] = v
        return out

    def in_domain(self, x) -> bool:
        cp = CoveringPoint.of(x)
        if not cp.log_abs < math.log(self.r):
            return False
        if abs(complex(self.nu2).imag) < 1e-14:
            return True
        s2, s3 = self.variables(cp)
        return abs(s2) < self.r and abs(s3) < self.r

    def argument(self, x) -> complex:
        """u = nu1 w1 + nu2 w2 + v."""
        hp = half_periods(CoveringPoint.of(x))
        return self.nu1 * hp.omega1 + self.nu2 * hp.omega2 + self.v(x)

    def value(self, x, check_domain: bool = True) -> complex:
        return elliptic_value(self, x, check_domain)

    def shimomura_constants(self) -> tuple:
        return shimomura_constants(self.nu1, self.nu2)


def v_elliptic_coefficients(nu1, nu2, theta, order: int = DEFAULT_ORDER, r: float = DEFAULT_R) -> EllipticBranch:
    nu2 = _check_nu2(nu2)
    N = order + 1
    sigma = 1 - nu2
    Y = y_bivariate(sigma, theta, N)
    # y = t2 Y(t2, t3), t2 = -4 s3, t3 = -4 s2; arrays are indexed [s2 degree, s3 degree]
    idx = np.arange(N + 1)
    Ys = Bivariate((Y.c * (-4.0) ** (idx[:, None] + idx[None, :])).T)
    s2 = Bivariate.monomial(1, 0, N)
    s3 = Bivariate.monomial(0, 1, N)
    y = Ys * s3 * (-4.0)

    c_k, d_k = _coeffs(N + 1)
    F = _x_series(c_k, N)
    G = _x_series(c_k * d_k, N)
    lnQ = LN16 - G / F  # q = (x/16) Q(x)
    Q = lnQ.exp()
    q = s2 * s3 * Q
    x = s2 * s3 * 16.0
    q2 = q * q
    lam, mu = [], []  # n q^2n / (1 - q^2n) and n / (1 - q^2n)
    q2n = Bivariate.const(1.0, N)
    for n in range(1, N + 1):
        q2n = q2n * q2
        mu.append(n / (1 - q2n))
        lam.append(q2n * mu[-1])
    S = sum(lam[1:], lam[0])
    K = ((y - (x + 1) / 3) * F * F + 1 / 3 - S * 8).divide_w()  # exact division by s3

    bq = s2 * s2 * Q * Q
    U = Bivariate.const(1.0, N)
    for _ in range(2 * N + 4):
        Ui = U.inverse()
        tot = U * (-4) / ((1 - s3 * U) * (1 - s3 * U))
        s3p = Bivariate.const(1.0, N)  # s3^(n-1)
        Up = Bivariate.const(1.0, N)
        Um = Bivariate.const(1.0, N)
        bqp = Bivariate.const(1.0, N)
        for n in range(1, N + 1):
            Up, Um, bqp = Up * U, Um * Ui, bqp * bq
            # lam W^n + lam W^-n with W = s3 U and q^2 / W = s2^2 s3 Q^2 / U, over s3
            tot = tot - (lam[n - 1] * Up + mu[n - 1] * bqp * Um) * s3p * 4
            s3p = s3p * s3
        U = U + (tot - K) / 4
    v = F * (U.log() - lnQ * nu2) / 2j
    return EllipticBranch(complex(nu1), nu2, ThetaClass.of(theta), order,
                          Bivariate(v.c[: order + 1, : order + 1]), r)


def elliptic_value(branch: EllipticBranch, x, check_domain: bool = True) -> complex:
    cp = CoveringPoint.of(x)
    if check_domain and not branch.in_domain(cp):
        raise OutsideDomain("x is outside the elliptic-representation domain", log_abs=cp.log_abs, arg=cp.arg)
    hp = half_periods(cp)
    u = branch.nu1 * hp.omega1 + branch.nu2 * hp.omega2 + branch.v(cp)
    return weierstrass_p(u, hp.omega1, hp.omega2) + (1 + cp.value) / 3
