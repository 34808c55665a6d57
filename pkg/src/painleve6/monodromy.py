"""Trace coordinates of the monodromy group and the relations among them."""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import BoundaryClass, ConditionViolation, DegenerateDenominator, SingularA
from .params import ThetaClass, trace_from_theta

CUBIC_TOL = 1e-10


@dataclass(frozen=True)
class MonodromyData:
    p0: complex
    px: complex
    p1: complex
    pInf: complex
    p0x: complex
    px1: complex
    p01: complex

    @classmethod
    def from_theta(cls, theta, p0x, px1, p01) -> "MonodromyData":
        p0, px, p1, pinf = trace_from_theta(theta)
        return cls(p0, px, p1, pinf, complex(p0x), complex(px1), complex(p01))

    def as_tuple(self):
        return (self.p0, self.px, self.p1, self.pInf, self.p0x, self.px1, self.p01)

    def residual(self) -> complex:
        return fricke_residual(self)

    def on_cubic(self, tol: float = CUBIC_TOL) -> bool:
        return abs(self.residual()) < tol

    def to_json(self) -> dict:
        return {"p": [[complex(v).real, complex(v).imag] for v in self.as_tuple()]}

    @classmethod
    def from_json(cls, obj) -> "MonodromyData":
        vals = obj["p"] if isinstance(obj, dict) else obj
        return cls(*[complex(*v) if isinstance(v, (list, tuple)) else complex(v) for v in vals])


def fricke_residual(d: MonodromyData) -> complex:
    """Left side of the Fricke cubic; zero exactly on the character variety."""
    p0, px, p1, pi_, a, c, b = (complex(v) for v in d.as_tuple())  # a=p0x, b=p01, c=px1
    return (a * a + b * b + c * c + a * b * c
            - (p0 * px + p1 * pi_) * a
            - (p0 * p1 + px * pi_) * b
            - (px * p1 + p0 * pi_) * c
            + p0 * p0 + p1 * p1 + px * px + pi_ * pi_ + p0 * px * p1 * pi_ - 4)


def complete_traces(p_mu, p0x=None, px1=None, p01=None) -> list[MonodromyData]:
    """Solve the cubic for the one missing p_ij; returns both roots.

    The cubic is quadratic in each p_ij separately, so there are two
    candidates; choosing between them is branch data left to the caller.
    """
    missing = [n for n, v in (("p0x", p0x), ("px1", px1), ("p01", p01)) if v is None]
    if len(missing) != 1:
        raise ValueError("exactly one of p0x, px1, p01 must be None")
    p0, px, p1, pi_ = (complex(v) for v in p_mu)
    const = p0 * p0 + p1 * p1 + px * px + pi_ * pi_ + p0 * px * p1 * pi_ - 4
    lin = {"p0x": p0 * px + p1 * pi_, "p01": p0 * p1 + px * pi_, "px1": px * p1 + p0 * pi_}
    known = {"p0x": p0x, "px1": px1, "p01": p01}
    m = missing[0]
    u, v = [complex(known[k]) for k in ("p0x", "px1", "p01") if k != m]
    others = [k for k in ("p0x", "px1", "p01") if k != m]
    # z^2 + (u v - lin_m) z + (u^2 + v^2 - lin_u u - lin_v v + const) = 0
    bq = u * v - lin[m]
    cq = u * u + v * v - lin[others[0]] * u - lin[others[1]] * v + const
    disc = cmath.sqrt(bq * bq - 4 * cq)
    out = []
    for z in ((-bq + disc) / 2, (-bq - disc) / 2):
        vals = dict(known)
        vals[m] = z
        out.append(MonodromyData(p0, px, p1, pi_, complex(vals["p0x"]), complex(vals["px1"]), complex(vals["p01"])))
    return out


@dataclass(frozen=True)
class ExponentSigma:
    sigma: complex
    point: str = "0"

    def family(self, N: int, sign: int = 1) -> complex:
        """sigma_N^(+/-) = +/- sigma + 2N; all have the same trace."""
        return sign * self.sigma + 2 * N

    def trace(self) -> complex:
        return complex(2 * np.cos(np.pi * self.sigma))


def sigma_from_trace(p, point: str = "0", tol: float = 1e-12) -> ExponentSigma:
    """sigma with 2 cos(pi sigma) = p in the strip 0 <= Re sigma < 1.

    Raises BoundaryClass (carrying the sigma of the boundary) for p = 2
    and for real p <= -2, where a different behaviour class applies.
    """
    p = complex(p)
    if abs(p - 2) <= tol:
        raise BoundaryClass("trace 2: logarithmic or Taylor class", sigma=0j, trace=p)
    if abs(p.imag) <= tol * max(1.0, abs(p)) and p.real <= -2 + tol:
        s = 1 + 1j * np.arccosh(-p.real / 2) / np.pi
        raise BoundaryClass("trace in (-inf, -2]: Re sigma = 1 class", sigma=complex(s), trace=p)
    s = complex(np.arccos(p / 2) / np.pi)
    if s.real < 0 or (abs(s.real) <= tol and s.imag < 0):
        s = -s
    if abs(s.real) <= tol:
        s = complex(0.0, s.imag)
    return ExponentSigma(s, point)


def _half_cos_product(theta: ThetaClass):
    sa = theta.thetaInf - 1  # sqrt(2 alpha)
    sg = theta.theta1  # sqrt(2 gamma)
    C = np.cos(np.pi / 2 * (sa + sg)) * np.cos(np.pi / 2 * (sa - sg))
    return complex(C), complex(sg)


def taylor_branch_connection(theta, p01) -> complex:
    """Integration constant a of the Taylor branch y = a x + ... from p01."""
    th = ThetaClass.of(theta)
    C, sg = _half_cos_product(th)
    if abs(C) < 1e-14:
        raise DegenerateDenominator("cos(pi/2 (s_a + s_g)) cos(pi/2 (s_a - s_g)) vanishes", product=C)
    return complex((2 * np.cos(np.pi * sg) - complex(p01)) / (4 * C))


def taylor_branch_traces(theta, a) -> tuple:
    """(p0x, p01, px1) of the Taylor branch with constant a.

    The branch exists only for theta_0 = theta_x = 0; other theta would put
    the triple off the cubic.
    """
    th = ThetaClass.of(theta)
    if abs(th.theta0) > 1e-12 or abs(th.thetax) > 1e-12:
        raise ConditionViolation("the Taylor branch y = a x + ... needs theta_0 = theta_x = 0",
                                 theta0=th.theta0, thetax=th.thetax)
    C, sg = _half_cos_product(th)
    a = complex(a)
    c1 = complex(2 * np.cos(np.pi * sg))
    return 2.0 + 0j, c1 - 4 * a * C, c1 + 4 * (a - 1) * C


def a_squared(sigma, theta) -> complex:
    """A^2(sigma^2) as displayed with the three same-order leading terms."""
    th = ThetaClass.of(theta)
    s2 = complex(sigma) ** 2
    t0, tx = th.theta0, th.thetax
    if s2 == 0:
        raise SingularA("sigma = 0", sigma=complex(sigma))
    return (s2 - (t0 - tx) ** 2) * (s2 - (t0 + tx) ** 2) / (4 * s2)


def a_sigma_product(sigma, theta, tol: float = 1e-14) -> complex:
    """Required product a(sigma) a(-sigma) = 4 sigma^2 / A^2(sigma^2)."""
    A2 = a_squared(sigma, theta)
    if abs(A2) <= tol:
        raise SingularA("A^2 vanishes: sigma^2 = (theta_0 +/- theta_x)^2", sigma=complex(sigma))
    return 4 * complex(sigma) ** 2 / A2


def reflected_a(sigma, a, theta, tol: float = 1e-14) -> complex:
    """a(-sigma) for which the sigma and -sigma power expansions coincide.

    With y = x (a x^-sigma + B + c x^sigma + ...), the x^sigma coefficient is
    c = A^2 / (4 sigma^2 a), so a(sigma) a(-sigma) = A^2 / (4 sigma^2): the
    reciprocal of :func:`a_sigma_product` in this normalization of a.
    """
    A2 = a_squared(sigma, theta)
    if abs(A2) <= tol:
        raise SingularA("A^2 vanishes: sigma^2 = (theta_0 +/- theta_x)^2", sigma=complex(sigma))
    if complex(a) == 0:
        raise SingularA("a = 0")
    return A2 / (4 * complex(sigma) ** 2 * complex(a))
