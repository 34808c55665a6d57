"""PVI coefficients (alpha, beta, gamma, delta) and their theta parametrization.

    alpha = (theta_inf - 1)^2 / 2,   beta = -theta_0^2 / 2,
    gamma = theta_1^2 / 2,           delta = 1/2 - theta_x^2 / 2.

Each theta is defined up to a sign (theta_inf up to theta_inf -> 2 - theta_inf),
so a ThetaClass stores a canonical representative.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass

import numpy as np

from .errors import ThetaInfZero


def _canon_sign(z: complex) -> complex:
    """Representative of {z, -z} with Re >= 0 (Im >= 0 on ties)."""
    z = complex(z)
    if z.real < 0 or (z.real == 0 and z.imag < 0):
        return -z
    return z + 0.0  # turns -0.0 into 0.0


@dataclass(frozen=True)
class ThetaClass:
    theta0: complex
    thetax: complex
    theta1: complex
    thetaInf: complex

    def __post_init__(self):
        for name in ("theta0", "thetax", "theta1", "thetaInf"):
            object.__setattr__(self, name, complex(getattr(self, name)))

    def canonical(self) -> "ThetaClass":
        ti = 1 + _canon_sign(self.thetaInf - 1)
        return ThetaClass(_canon_sign(self.theta0), _canon_sign(self.thetax), _canon_sign(self.theta1), ti)

    def equivalent(self, other: "ThetaClass", tol: float = 1e-12) -> bool:
        # componentwise up to sign; comparing canonical forms would be discontinuous on Re = 0
        other = ThetaClass.of(other)
        shift = (0, 0, 0, 1)
        return all(min(abs(u - v), abs(u + v - 2 * c)) <= tol * max(1.0, abs(u))
                   for u, v, c in zip(self.as_tuple(), other.as_tuple(), shift))

    def as_tuple(self):
        return (self.theta0, self.thetax, self.theta1, self.thetaInf)

    @classmethod
    def of(cls, t) -> "ThetaClass":
        return t if isinstance(t, ThetaClass) else cls(*t)


@dataclass(frozen=True)
class PviParameters:
    alpha: complex
    beta: complex
    gamma: complex
    delta: complex
    theta: ThetaClass

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma, self.delta)

    def to_json(self) -> dict:
        names = ("alpha", "beta", "gamma", "delta")
        out = {k: [v.real, v.imag] for k, v in zip(names, map(complex, self.as_tuple()))}
        for k, v in zip(("theta0", "thetax", "theta1", "thetaInf"), self.theta.as_tuple()):
            out[k] = [v.real, v.imag]
        # the generic-coefficient condition for the power-law class is not checked
        out["genericity"] = "unchecked"
        return out


def theta_from_coefficients(alpha, beta, gamma, delta) -> ThetaClass:
    """Canonical theta class for the given coefficients (principal roots)."""
    t0 = cmath.sqrt(-2 * complex(beta))
    tx = cmath.sqrt(1 - 2 * complex(delta))
    t1 = cmath.sqrt(2 * complex(gamma))
    ti = 1 + cmath.sqrt(2 * complex(alpha))
    th = ThetaClass(t0, tx, t1, ti).canonical()
    if th.thetaInf == 0:  # cannot happen after canonicalization, kept as a guard
        raise ThetaInfZero("theta_inf = 0 is excluded", alpha=complex(alpha))
    return th


def coefficients_from_theta(theta) -> PviParameters:
    th = ThetaClass.of(theta)
    t0, tx, t1, ti = th.as_tuple()
    if ti == 0:
        # theta_inf = 0 is re-represented by its equivalent 2
        th = ThetaClass(t0, tx, t1, 2)
        ti = 2
    alpha = (ti - 1) ** 2 / 2
    beta = -(t0**2) / 2
    gamma = t1**2 / 2
    delta = 0.5 - tx**2 / 2
    return PviParameters(alpha, beta, gamma, delta, th)


def parameters(alpha, beta, gamma, delta) -> PviParameters:
    th = theta_from_coefficients(alpha, beta, gamma, delta)
    return PviParameters(complex(alpha), complex(beta), complex(gamma), complex(delta), th)


def trace_from_theta(theta) -> tuple:
    """p_mu = 2 cos(pi theta_mu) for mu = 0, x, 1, inf."""
    th = ThetaClass.of(theta)
    return tuple(complex(2 * np.cos(np.pi * t)) for t in th.as_tuple())
