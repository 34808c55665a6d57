"""Pole lattices of the inverse oscillatory branch near x = 0.

The branch is written as 1/y = sum_{n>=1} x^(n-1) y_n(t), t = e^{i phi} x^(2 i nu),
with y_n(t) = sum_m A_nm t^m.  Zeros of y_1 lie on two geometric sequences
x_k(j); the poles xi_k(j) of y are found near them by reverting the full
series around each zero.  Scalar work runs in gmpy2 at ``digits`` precision.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import gmpy2
import mpmath

from .errors import DegenerateRadical, NoConvergence, ReversionBreakdown
from .lattice import Backend, precision
from .params import ThetaClass
from .series import BranchExpansion, expand_branch

DEFAULT_DIGITS = 50


def _c(z) -> complex:
    return complex(float(z.real), float(z.imag))


@dataclass
class ReciprocalExpansion:
    nu: object
    phi: object
    theta: ThetaClass
    order: int
    digits: int
    branch: BranchExpansion  # computed with phi = 0

    @property
    def bk(self) -> Backend:
        return Backend(self.digits)

    def coefficients(self) -> dict:
        """{(n, m): A_nm} with n >= 1 as in 1/y = sum x^(n-1) y_n."""
        return {(n + 1, m): c for (n, m, l), c in self.branch.coefficients.items()}

    def level1(self):
        c = self.branch.coefficients
        z = self.bk.num(0)
        return c.get((0, 1, 0), z), c.get((0, 0, 0), z), c.get((0, -1, 0), z)

    def eiphi(self, phi=None):
        bk = self.bk
        return bk.exp(bk.num(1j) * bk.num(self.phi if phi is None else phi))

    def value_log(self, L, phi=None, derivative: bool = False):
        """1/y at x = e^L (and d(1/y)/dL when asked)."""
        bk = self.bk
        with precision(self.digits):
            L = bk.num(L)
            lam = bk.num(2j) * bk.num(self.nu)
            eph = self.eiphi(phi)
            tot = bk.num(0)
            dtot = bk.num(0)
            for (n, m, _), c in self.branch.coefficients.items():
                e = n + m * lam
                term = c * eph**m * bk.exp(e * L)
                tot += term
                dtot += e * term
            return (tot, dtot) if derivative else tot

    def value(self, x, phi=None):
        from .covering import CoveringPoint
        cp = CoveringPoint.of(x)
        return self.value_log(complex(cp.log_abs, cp.arg), phi)


def reciprocal_coefficients(nu, phi, theta, order: int = 8, digits: int | None = DEFAULT_DIGITS) -> ReciprocalExpansion:
    """A_nm of the reciprocal expansion; they do not depend on phi."""
    th = ThetaClass.of(theta)
    b = expand_branch("InvOscNuPhi", {"nu": nu, "phi": 0}, th, order - 1, digits=digits)
    return ReciprocalExpansion(nu, phi, th, order, digits, b)


def zero_roots(rec: ReciprocalExpansion, tol: float = 1e-14):
    """t_1, t_2: roots of A11 t^2 + A10 t + A1,-1, i.e. the zeros of y_1 in t.

    Label j = 1 is the root with the + square root, which is the sequence of
    larger modulus (see the ledger note on labels).
    """
    bk = rec.bk
    with precision(rec.digits):
        A11, A10, A1m = rec.level1()
        h = A10 / (2 * A11)
        disc = h * h - A1m / A11
        if bk.abs(disc) < tol:
            raise DegenerateRadical("the two zero sequences coincide", disc=_c(disc))
        r = bk.sqrt(disc)
        return {1: r - h, 2: -r - h}


def zero_log(rec: ReciprocalExpansion, k: int, j: int):
    """ln x_k(j) = -phi/(2 nu) - (i / 2 nu) ln t_j - k pi / nu (principal ln)."""
    bk = rec.bk
    with precision(rec.digits):
        t = zero_roots(rec)[j]
        nu = bk.num(rec.nu)
        return -bk.num(rec.phi) / (2 * nu) - bk.num(1j) / (2 * nu) * bk.log(t) - k * bk.pi() / nu


def zero_lattice(rec: ReciprocalExpansion, k_range, js=(1, 2)) -> list:
    """[(k, j, x_k(j))] with x_k(j) as extended-precision complex numbers."""
    bk = rec.bk
    out = []
    with precision(rec.digits):
        for j in js:
            for k in k_range:
                out.append((k, j, bk.exp(zero_log(rec, k, j))))
    return out


def _binom(p, k: int, one):
    r = one
    for i in range(k):
        r = r * (p - i) / (i + 1)
    return r


def pole_corrections(rec: ReciprocalExpansion, j: int, Norder: int = 4) -> dict:
    """Coefficients of xi = x_k + sum_{N>=2} D_N x_k^N around the zeros x_k(j).

    Writing xi = s (1 + u), s = x_k, the equation sum_n s^(n-1) (1+u)^(n-1)
    y_n(t_j (1+u)^(2 i nu)) = 0 is solved for u = sum u_N s^N by iterated
    substitution of truncated power series; D_N = u_(N-1).  D_2 = -1/2.
    """
    if Norder < 2:
        return {}
    bk = rec.bk
    K = Norder - 1
    with precision(rec.digits):
        t = zero_roots(rec)[j]
        lam = bk.num(2j) * bk.num(rec.nu)
        one = bk.num(1)
        zero = bk.num(0)
        coeffs = rec.coefficients()
        # g_n(u) = sum_m A_nm t^m (1+u)^(n-1 + lam m), as power series in u
        g = []
        for n in range(1, K + 2):
            cs = [zero] * (K + 1)
            for (nn, m), c in coeffs.items():
                if nn != n:
                    continue
                ctm = c * t**m
                p = (n - 1) + lam * m
                for kk in range(K + 1):
                    cs[kk] += ctm * _binom(p, kk, one)
            g.append(cs)
        d1 = g[0][1]
        ref = max(bk.abs(c) for c in g[0]) or 1.0
        if bk.abs(d1) < 1e-12 * ref:
            raise ReversionBreakdown("y_1 has a multiple zero: the linear term vanishes", j=j)

        def mul(a, b):
            out = [zero] * (K + 1)
            for i, ai in enumerate(a):
                if ai == 0:
                    continue
                for jj in range(K + 1 - i):
                    out[i + jj] += ai * b[jj]
            return out

        u = [zero] * (K + 1)
        for _ in range(K + 2):
            tot = [zero] * (K + 1)
            for n, gn in enumerate(g):  # s^n g_{n+1}(u(s))
                acc = [zero] * (K + 1)
                up = [one] + [zero] * K
                for kk in range(K + 1):
                    for i in range(K + 1):
                        acc[i] += gn[kk] * up[i]
                    up = mul(up, u)
                for i in range(K + 1 - n):
                    tot[i + n] += acc[i]
            u = [ui - ti / d1 for ui, ti in zip(u, tot)]
        return {N: u[N - 1] for N in range(2, Norder + 1)}


def predicted_pole(rec: ReciprocalExpansion, k: int, j: int, Norder: int = 4, deltas: dict | None = None):
    bk = rec.bk
    with precision(rec.digits):
        deltas = deltas or pole_corrections(rec, j, Norder)
        x = bk.exp(zero_log(rec, k, j))
        xi = x
        for N, d in deltas.items():
            if N <= Norder:
                xi += d * x**N
        return xi


def refine_pole(rec: ReciprocalExpansion, k: int, j: int, seed=None, maxit: int = 50):
    """Newton iteration for a zero of the truncated 1/y series near x_k(j).

    Works in the logarithmic coordinate L = ln x on the covering sheet of
    x_k(j).  Returns (xi, |1/y(xi)|, iterations).
    """
    bk = rec.bk
    with precision(rec.digits):
        L0 = zero_log(rec, k, j)
        L = L0 if seed is None else L0 + bk.log(bk.num(seed) / bk.exp(L0))
        eps = 10.0 ** (-(rec.digits - 5))
        x0 = bk.abs(bk.exp(L0))
        for it in range(1, maxit + 1):
            F, dF = rec.value_log(L, derivative=True)
            step = F / dF
            L = L - step
            if bk.abs(step) < eps:
                F = rec.value_log(L)
                return bk.exp(L), bk.abs(F), it
        raise NoConvergence(f"Newton did not converge in {maxit} iterations", k=k, j=j, x=x0)


def continue_branch(nu, phi, loops: int = 1):
    """phi' with y(x e^{2 pi i n}, nu, phi) = y(x, nu, phi').

    Since the branch depends on x through e^{i phi} x^{2 i nu}, one loop
    multiplies x^{2 i nu} by e^{-4 pi nu}, which is absorbed by
    phi -> phi + 4 pi i nu.
    """
    return phi + 4j * math.pi * nu * loops if not hasattr(phi, "precision") else phi + 4 * loops * gmpy2.const_pi() * gmpy2.mpc(0, 1) * nu


def continue_branch_literal(nu, phi, loops: int = 1):
    """The shift phi + 2 pi i nu n as it is quoted for the continuation."""
    return phi + 2j * math.pi * nu * loops


def radius_upper_bound(rec: ReciprocalExpansion, tol: float = 1e-14) -> float:
    """min(1/|sqrt(d) - A10/(2A11)|, 1/|sqrt(d) + A10/(2A11)|), d the discriminant."""
    bk = rec.bk
    with precision(rec.digits):
        A11, A10, A1m = rec.level1()
        h = A10 / (2 * A11)
        disc = h * h - A1m / A11
        if bk.abs(disc) < tol:
            raise DegenerateRadical("vanishing radical", disc=_c(disc))
        r = bk.sqrt(disc)
        return float(min(math.exp(-math.log(bk.abs(r - h))), math.exp(-math.log(bk.abs(r + h)))))


def cp2_theta() -> ThetaClass:
    """alpha = 9/2, beta = gamma = 0, delta = 1/2."""
    return ThetaClass(0, 0, 0, 4)


def cp2_reference_constants(digits: int = DEFAULT_DIGITS):
    """(nu, phi) of the branch attached to the quantum cohomology of CP^2, as mpmath numbers."""
    with mpmath.workdps(digits + 10):
        G = (1 + mpmath.sqrt(5)) / 2
        nu = 2 * mpmath.log(G) / mpmath.pi
        z = (-(mpmath.pi**2) * (G**4 + 1) ** 2 / (G**2 + 1) ** 2 * mpmath.power(2, 16j * nu)
             * (1 - 2j * nu) ** 2 * nu**2 / (1 + 2j * nu) ** 2
             * mpmath.gamma(1 - 2j * nu) ** 4 / mpmath.gamma(1 - 1j * nu) ** 8)
        phi = 1j * mpmath.log(z)
        return +nu, +phi


def cp2_expansion(order: int = 8, digits: int = DEFAULT_DIGITS) -> ReciprocalExpansion:
    nu, phi = cp2_reference_constants(digits)
    return reciprocal_coefficients(nu, phi, cp2_theta(), order, digits)


def cp2_delta_closed_forms(nu) -> dict:
    """The closed forms quoted for Delta_3, Delta_4 as functions of nu (j = 1, 2)."""
    n2 = nu * nu
    den = 1024 * (n2 + 1) ** 2
    return {
        (3, 1): (176 * n2 * n2 + 185 + 352 * n2) / den,
        (3, 2): (401 + 176 * n2 * n2 + 352 * n2) / den,
        (4, 1): -(57 + 48 * n2 * n2 + 96 * n2) / den,
        (4, 2): -(273 + 48 * n2 * n2 + 96 * n2) / den,
    }
