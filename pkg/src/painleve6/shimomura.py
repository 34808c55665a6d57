"""Cosh-squared representation near x = 0 and its spiral domains.

    y = 1 / cosh^2( (sigma - 1)/2 ln x - ln(a)/2 + ln 2 + v/2 ).

With t2 = a x^(1-sigma) and t3 = x^sigma / a (so t2 t3 = x), v is an
ordinary power series V(t2, t3): x^n t2^m and x^n t3^m are t2^(n+m) t3^n and
t2^n t3^(n+m).  The representation is equivalent to

    x / y = t3 (e^v + t2/2 + t2^2 e^(-v) / 16),

so V is read off from the solution y = t2 Y(t2, t3) of PVI, which the
lattice recursion produces order by order.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .bivariate import Bivariate
from .covering import CoveringPoint
from .errors import CoshArgumentOverflow, ConditionViolation, OutsideDomain, SingularA
from .lattice import Backend
from .monodromy import a_squared, reflected_a
from .params import ThetaClass
from .recursion import Ansatz, solve_ansatz
from .residual import PviResidualForm
from .series import _theta_backend

DEFAULT_R = 0.1
DEFAULT_ORDER = 8


def check_sigma(sigma) -> complex:
    s = complex(sigma)
    if abs(s.imag) < 1e-14 and (s.real <= 0 or s.real >= 1):
        raise ConditionViolation("sigma must avoid (-inf, 0] and [1, +inf)", sigma=s)
    return s


def y_bivariate(sigma, theta, order: int) -> Bivariate:
    """Y(t2, t3) = y / t2 modulo (t2^(N+1), t3^(N+1)), independent of a."""
    s = check_sigma(sigma)
    th = ThetaClass.of(theta)
    bk = Backend()
    thb, co = _theta_backend(th, bk)
    t0, tx = thb[0], thb[1]
    s2 = s * s
    A2lit = (s2 - (t0 - tx) ** 2) * (s2 - (t0 + tx) ** 2) / (4 * s2)
    B = (t0 * t0 - tx * tx + s2) / (2 * s2)
    # x^(n + m sigma) = a^m t2^n t3^(n+m); with a = 1 the coefficients are those of Y
    seeds = {(1, -1, 0): 1.0, (1, 0, 0): B, (1, 1, 0): A2lit / (4 * s2)}
    ans = Ansatz("y", s, 1, seeds, lambda n: [(m, 0) for m in range(-n, n + 1)])
    sol = solve_ansatz(PviResidualForm(*co, chart="y"), ans, order + 1, bk)
    Y = Bivariate.zeros(order)
    for (n, m, _), c in sol.coefficients.items():
        i, j = n - 1, n + m
        if 0 <= i <= order and 0 <= j <= order:
            Y.c[i, j] = c
    return Y


def _t2_monomial(N):
    return Bivariate.monomial(1, 0, N)


@dataclass
class ShimomuraBranch:
    """sigma, a and the truncated v = sum V[i, j] t2^i t3^j."""

    sigma: complex
    a: complex
    theta: ThetaClass
    order: int
    V: Bivariate
    r: float = DEFAULT_R

    def a_n(self, n: int) -> complex:
        return complex(self.V.c[n, n])

    def b_nm(self, n: int, m: int) -> complex:
        return complex(self.V.c[n + m, n])

    def c_nm(self, n: int, m: int) -> complex:
        return complex(self.V.c[n, n + m])

    def families(self) -> dict:
        """The three sums: a_n x^n, b_nm x^n (a x^(1-sigma))^m, c_nm x^n (x^sigma / a)^m."""
        N = self.order
        out = {"a": {}, "b": {}, "c": {}}
        for i in range(N + 1):
            for j in range(N + 1):
                v = complex(self.V.c[i, j])
                if i == j and i >= 1:
                    out["a"][i] = v
                elif i > j:
                    out["b"][(j, i - j)] = v
                elif j > i:
                    out["c"][(i, j - i)] = v
        return out

    def variables(self, x) -> tuple:
        L = CoveringPoint.of(x).log
        return self.a * cmath.exp((1 - self.sigma) * L), cmath.exp(self.sigma * L) / self.a

    def v(self, x) -> complex:
        t2, t3 = self.variables(x)
        return self.V(t2, t3)

    def domain(self) -> "CriticalDomain":
        return CriticalDomain(self.r, self.sigma, self.a)

    def value(self, x, check_domain: bool = True) -> complex:
        return shimomura_value(self, x, check_domain=check_domain)

    def reciprocal_laurent(self) -> Bivariate:
        """t2 / y = e^v + t2/2 + t2^2 e^(-v) / 16 as a series (so 1/y = this / t2)."""
        E = self.V.exp()
        t2 = _t2_monomial(self.order)
        return E + t2 * 0.5 + t2 * t2 * E.inverse() / 16


def v_coefficients(sigma, a, theta, order: int = DEFAULT_ORDER, r: float = DEFAULT_R) -> ShimomuraBranch:
    """Coefficients of v through degree ``order`` in each of t2, t3.

    The coefficients do not depend on a; a only enters through t2 and t3.
    """
    s = check_sigma(sigma)
    if complex(a) == 0:
        raise ConditionViolation("a must be nonzero")
    Y = y_bivariate(s, theta, order)
    R = Y.inverse()  # t2 / y
    t2 = _t2_monomial(order)
    P = R - t2 * 0.5
    E = (P + (P * P - t2 * t2 * 0.25).sqrt()) * 0.5
    return ShimomuraBranch(s, complex(a), ThetaClass.of(theta), order, E.log(), r)


def _inv_cosh2(Z: complex) -> complex:
    """1/cosh^2 Z through exponentials with negative real part."""
    if not (cmath.isfinite(Z)):
        raise CoshArgumentOverflow("non-finite cosh argument", Z=Z)
    s = -1 if Z.real >= 0 else 1
    if s * 2 * Z.real < -1400:
        return 0j
    e = cmath.exp(2 * s * Z)
    return 4 * e / (1 + e) ** 2


def shimomura_value(branch: ShimomuraBranch, x, v=None, check_domain: bool = True) -> complex:
    """y at a covering point x (complex numbers use the principal argument)."""
    cp = CoveringPoint.of(x)
    if check_domain and not branch.domain().contains(cp):
        raise OutsideDomain("x is outside the cosh-representation domain", log_abs=cp.log_abs, arg=cp.arg,
                            r=branch.r)
    vv = branch.v(cp) if v is None else v
    Z = (branch.sigma - 1) / 2 * cp.log - 0.5 * cmath.log(branch.a) + math.log(2) + vv / 2
    return _inv_cosh2(Z)


def cosh_denominator(branch: ShimomuraBranch, x) -> complex:
    cp = CoveringPoint.of(x)
    Z = (branch.sigma - 1) / 2 * cp.log - 0.5 * cmath.log(branch.a) + math.log(2) + branch.v(cp) / 2
    return cmath.cosh(Z)


# -- domains and paths -------------------------------------------------------------


@dataclass(frozen=True)
class CriticalDomain:
    """|x| < r, |a x^(1-sigma)| < 4r, |x^sigma / a| < r/4 on the covering."""

    r: float
    sigma: complex
    a: complex

    def bounds(self, log_abs: float) -> tuple:
        """(lower, upper) for Im(sigma) arg x at the given ln|x|."""
        s = complex(self.sigma)
        la = math.log(abs(self.a))
        lo = s.real * log_abs - la - math.log(self.r / 4)
        hi = (s.real - 1) * log_abs - la + math.log(4 * self.r)
        return lo, hi

    def contains(self, x) -> bool:
        cp = CoveringPoint.of(x)
        if not cp.log_abs < math.log(self.r):
            return False
        s = complex(self.sigma)
        if s.imag == 0:
            return True
        lo, hi = self.bounds(cp.log_abs)
        return lo < s.imag * cp.arg < hi

    def apex(self) -> float:
        """ln|x| where the two boundary lines meet (the wedge is to its left)."""
        return 2 * math.log(self.r)

    def boundary_polylines(self, log_min: float, samples: int = 50) -> np.ndarray:
        """Rows (ln|x|, lower, upper) in the (ln|x|, Im sigma arg x) plane."""
        hi_end = min(self.apex(), math.log(self.r))
        L = np.linspace(log_min, hi_end, samples)
        lo, hi = self.bounds(L)
        return np.column_stack([L, lo, hi])


@dataclass(frozen=True)
class SigmaPath:
    """arg x = arg x0 + (Re sigma - Sigma)/Im sigma (ln|x| - ln|x0|)."""

    x0: CoveringPoint
    Sigma: float
    sigma: complex

    def __post_init__(self):
        if not 0 <= self.Sigma <= 1:
            raise ConditionViolation("Sigma must lie in [0, 1]", Sigma=self.Sigma)
        if complex(self.sigma).imag == 0:
            raise ConditionViolation("paths of this family need Im sigma != 0")

    def at(self, log_abs: float) -> CoveringPoint:
        s = complex(self.sigma)
        x0 = CoveringPoint.of(self.x0)
        return CoveringPoint(log_abs, x0.arg + (s.real - self.Sigma) / s.imag * (log_abs - x0.log_abs))

    def points(self, log_abs_values) -> list:
        return [self.at(float(L)) for L in log_abs_values]


# -- tiling by sigma_N and approach classification ---------------------------------


def sigma_N(sigma, N: int, sign: int = 1) -> complex:
    return sign * complex(sigma) + 2 * N


def aya_rule(sigma, a, theta):
    """a(sigma_N) for N = 0: a(sigma) given, a(-sigma) from :func:`reflected_a`."""
    s = complex(sigma)

    def rule(sn):
        if abs(sn - s) < 1e-12:
            return complex(a)
        if abs(sn + s) < 1e-12:
            return reflected_a(s, a, theta)
        raise ConditionViolation("a(sigma_N) for N != 0 requires connection data not available here",
                                 sigma_N=sn)

    return rule


def domain_for_N(sigma, a_rule, N: int, sign: int = 1, r: float = DEFAULT_R) -> CriticalDomain:
    """D_s(r; sigma_N^+-, a(sigma_N^+-)); ``a_rule`` maps sigma_N to a (callable or dict)."""
    sn = sigma_N(sigma, N, sign)
    if isinstance(a_rule, dict):
        if sn not in a_rule:
            raise ConditionViolation("no a given for this sigma_N", sigma_N=sn)
        a = a_rule[sn]
    else:
        a = a_rule(sn)
    if a == 0 or not cmath.isfinite(complex(a)):
        raise SingularA("a(sigma_N) is not finite and nonzero", sigma_N=sn)
    return CriticalDomain(r, sn, complex(a))


def separating_strip(d1: CriticalDomain, d2: CriticalDomain, log_abs: float) -> tuple | None:
    """Interval of Im(sigma) arg x between the two domains at ln|x| (None if they overlap).

    Both domains must be drawn in the same plane, i.e. use the same Im sigma
    up to sign; bounds of the second are rescaled to the first one's axis.
    """
    s1 = complex(d1.sigma).imag
    s2 = complex(d2.sigma).imag
    if s1 == 0 or s2 == 0:
        return None
    lo1, hi1 = d1.bounds(log_abs)
    lo2, hi2 = d2.bounds(log_abs)
    f = s1 / s2
    lo2, hi2 = sorted((lo2 * f, hi2 * f))
    if hi1 <= lo2:
        return (hi1, lo2)
    if hi2 <= lo1:
        return (hi2, lo1)
    return None


def classify_approach(slope: float, sigma, N_range=range(-3, 4), tol: float = 1e-9) -> dict:
    """Behaviour along a line of the given slope in the (ln|x|, Im sigma arg x) plane."""
    s = complex(sigma)
    for N in N_range:
        sp = s.real + 2 * N
        if abs(slope - sp) <= tol:
            return {"tag": "oscillatory", "sigma": [sp, s.imag], "N": N, "poleLine": False}
        if abs(slope - (sp - 1)) <= tol:
            return {"tag": "inverse-oscillatory", "sigma": [sp, s.imag], "N": N, "poleLine": True}
    return {"tag": "power", "sigma": [s.real, s.imag], "N": None, "poleLine": False}


def invasi_constants(sigma, theta) -> tuple:
    """(curly A^2, curly B) for 1/y = A sin(i(1-sigma) ln x + phi) + B + O(x), as displayed.

    The product of the t2^(-1) and t2 coefficients of 1/y is A^2 / (4 (1-sigma)^2),
    so the amplitude of the sine is sqrt(A^2) / (1 - sigma).
    """
    th = ThetaClass.of(theta)
    s1 = 1 - complex(sigma)
    sa, t1 = th.thetaInf - 1, th.theta1
    A2 = (s1**2 - (sa - t1) ** 2) * (s1**2 - (sa + t1) ** 2) / (4 * s1**2)
    B = (sa**2 - t1**2 + s1**2) / (2 * s1**2)
    return A2, B


def empirical_radius(branch: ShimomuraBranch, residual, r0: float = DEFAULT_R, tol: float = 1e-8,
                     shrink: float = 0.5, tries: int = 20) -> float:
    """Shrink r until ``residual(branch, x)`` is below tol on sample points of the domain."""
    r = r0
    for _ in range(tries):
        d = CriticalDomain(r, branch.sigma, branch.a)
        L = math.log(r) + math.log(0.5)
        if complex(branch.sigma).imag != 0:
            lo, hi = d.bounds(L)
            args = np.linspace(lo, hi, 7)[1:-1] / complex(branch.sigma).imag
        else:
            args = np.linspace(-math.pi, math.pi, 5)
        if all(abs(residual(branch, CoveringPoint(L, float(t)))) < tol for t in args):
            return r
        r *= shrink
    raise ConditionViolation("no radius found with residual below tolerance", tol=tol)


__all__ = [
    "ShimomuraBranch", "CriticalDomain", "SigmaPath", "v_coefficients", "shimomura_value", "domain_for_N",
    "classify_approach", "aya_rule", "sigma_N", "separating_strip", "invasi_constants", "y_bivariate",
    "a_squared", "empirical_radius", "cosh_denominator",
]
