"""Golden checks: every documented worked example as a named, runnable check.

Each check returns (ok, detail).  Checks marked with ``expected_failure``
encode a quoted statement literally that the computation contradicts; they
are reported but do not count as failures (the corrected statement is a
separate check).
"""
from __future__ import annotations

import cmath
import contextlib
import io
import math
import time
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import elliptic, monodromy, oracle, params, poles, series, shimomura, symmetry
from .covering import CoveringPoint
from .errors import BoundaryClass, DegenerateDenominator, NonPowerLaw, SingularA
from .params import ThetaClass


@dataclass
class Golden:
    name: str
    fn: Callable[[], tuple]
    expected_failure: str | None = None


REGISTRY: list[Golden] = []


def golden(name: str, expected_failure: str | None = None):
    def deco(fn):
        REGISTRY.append(Golden(name, fn, expected_failure))
        return fn
    return deco


def close(a, b, tol: float, rel: bool = False) -> bool:
    a, b = complex(a), complex(b)
    d = abs(a - b)
    return d <= tol * (abs(b) if rel else 1.0)


def _rng(seed: int = 0):
    return np.random.default_rng(seed)


def _cplx(rng, n=None, scale=1.0):
    return scale * (rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n))


# -- params ---------------------------------------------------------------------------

@golden("params.theta_from_coefficients.picard")
def _():
    th = params.theta_from_coefficients(0, 0, 0, 0.5)
    return th.equivalent(ThetaClass(0, 0, 0, 1)), f"theta = {th.as_tuple()}"


@golden("params.theta_from_coefficients.cp2")
def _():
    th = params.theta_from_coefficients(4.5, 0, 0, 0.5)
    return th.equivalent(ThetaClass(0, 0, 0, 4)), f"theta = {th.as_tuple()}"


@golden("params.theta_from_coefficients.round_trip")
def _():
    rng = _rng(1)
    worst = 0.0
    for _ in range(200):
        p = _cplx(rng, 4, 3)
        q = params.coefficients_from_theta(params.theta_from_coefficients(*p))
        worst = max(worst, max(abs(u - v) for u, v in zip(q.as_tuple(), p)))
    return worst < 1e-12, f"max error {worst:.2e}"


@golden("params.coefficients_from_theta.picard")
def _():
    c = params.coefficients_from_theta((0, 0, 0, 1)).as_tuple()
    return np.allclose(c, (0, 0, 0, 0.5), atol=1e-15), f"{c}"


@golden("params.coefficients_from_theta.cp2")
def _():
    c = params.coefficients_from_theta((0, 0, 0, 4)).as_tuple()
    return np.allclose(c, (4.5, 0, 0, 0.5), atol=1e-15), f"{c}"


@golden("params.coefficients_from_theta.sign_equivalence")
def _():
    rng = _rng(2)
    worst = 0.0
    for _ in range(100):
        t = _cplx(rng, 4, 2)
        a = params.coefficients_from_theta(t).as_tuple()
        b = params.coefficients_from_theta((-t[0], -t[1], -t[2], 2 - t[3])).as_tuple()
        worst = max(worst, max(abs(u - v) for u, v in zip(a, b)))
    return worst < 1e-13, f"max difference {worst:.2e}"


@golden("params.trace_from_theta.picard")
def _():
    p = params.trace_from_theta((0, 0, 0, 1))
    return np.allclose(p, (2, 2, 2, -2), atol=1e-14), f"{p}"


@golden("params.trace_from_theta.half")
def _():
    p = params.trace_from_theta((0.5, 0.5, 0.5, 0.5))
    return np.allclose(p, (0, 0, 0, 0), atol=1e-14), f"{p}"


@golden("params.trace_from_theta.cp2")
def _():
    p = params.trace_from_theta((0, 0, 0, 4))
    return np.allclose(p, (2, 2, 2, 2), atol=1e-14), f"{p}"


# -- monodromy ------------------------------------------------------------------------

def _md(pmu, pij):
    return monodromy.MonodromyData(*pmu, *pij)


@golden("monodromy.fricke.identity")
def _():
    r = monodromy.fricke_residual(_md((2, 2, 2, 2), (2, 2, 2)))
    return abs(r) == 0, f"residual {r}"


@golden("monodromy.fricke.picard_ones")
def _():
    r = monodromy.fricke_residual(_md((2, 2, 2, -2), (1, 1, 1)))
    return abs(r) < 1e-14, f"residual {r}"


@golden("monodromy.fricke.zero_pij")
def _():
    r = monodromy.fricke_residual(_md((2, 2, 2, 2), (0, 0, 0)))
    return close(r, 28, 1e-14), f"residual {r}"


@golden("monodromy.sigma_from_trace.zero")
def _():
    s = monodromy.sigma_from_trace(0).sigma
    return close(s, 0.5, 1e-15), f"sigma {s}"


def _boundary_trace(nu):
    # cosh from exponentials, independent of the library's trace routines
    return -(math.exp(2 * math.pi * nu) + math.exp(-2 * math.pi * nu))


@golden("monodromy.sigma_from_trace.boundary_cp2")
def _():
    nu = 0.30634
    try:
        monodromy.sigma_from_trace(_boundary_trace(nu))
    except BoundaryClass as e:
        s = e.details["sigma"]
        return close(s, 1 + 2j * nu, 1e-12), f"sigma = {s}"
    return False, "no BoundaryClass raised"


@golden("monodromy.sigma_from_trace.boundary_cp2_quoted_trace",
        expected_failure="-2 cosh(2 pi 0.30634) is -6.9996; the quoted -6.987 is an arithmetic slip")
def _():
    p = _boundary_trace(0.30634)
    return abs(p + 6.987) < 1e-3, f"p = {p:.6f}"


@golden("monodromy.sigma_from_trace.boundary_cp2_trace")
def _():
    p = _boundary_trace(0.30634)
    return abs(p + 6.9996) < 1e-4, f"p = {p:.6f}"


@golden("monodromy.sigma_from_trace.real")
def _():
    s = monodromy.sigma_from_trace(2 * math.cos(0.3 * math.pi)).sigma
    return close(s, 0.3, 1e-13), f"sigma {s}"


_TAYLOR_THETA = (0, 0, 0.37, 1.55)


def _sg_C(theta):
    th = ThetaClass.of(theta)
    sa, sg = th.thetaInf - 1, th.theta1
    return sg, np.cos(np.pi / 2 * (sa + sg)) * np.cos(np.pi / 2 * (sa - sg))


@golden("monodromy.taylor_connection.zero")
def _():
    sg, _ = _sg_C(_TAYLOR_THETA)
    a = monodromy.taylor_branch_connection(_TAYLOR_THETA, 2 * np.cos(np.pi * sg))
    return abs(a) < 1e-15, f"a = {a}"


@golden("monodromy.taylor_connection.round_trip")
def _():
    rng = _rng(3)
    worst = 0.0
    for a in _cplx(rng, 50, 2):
        _, p01, _ = monodromy.taylor_branch_traces(_TAYLOR_THETA, a)
        worst = max(worst, abs(monodromy.taylor_branch_connection(_TAYLOR_THETA, p01) - a))
    return worst < 1e-13, f"max error {worst:.2e}"


@golden("monodromy.taylor_connection.degenerate")
def _():
    try:
        monodromy.taylor_branch_connection((0, 0, 0, 2), -2)
    except DegenerateDenominator:
        return True, "DegenerateDenominator raised"
    return False, "no error"


@golden("monodromy.taylor_traces.a0")
def _():
    sg, C = _sg_C(_TAYLOR_THETA)
    p0x, p01, px1 = monodromy.taylor_branch_traces(_TAYLOR_THETA, 0)
    c1 = 2 * np.cos(np.pi * sg)
    return close(p01, c1, 1e-14) and close(px1, c1 - 4 * C, 1e-14) and p0x == 2, f"p01 {p01}, px1 {px1}"


@golden("monodromy.taylor_traces.a1")
def _():
    sg, _ = _sg_C(_TAYLOR_THETA)
    _, _, px1 = monodromy.taylor_branch_traces(_TAYLOR_THETA, 1)
    return close(px1, 2 * np.cos(np.pi * sg), 1e-14), f"px1 {px1}"


@golden("monodromy.taylor_traces.on_cubic")
def _():
    rng = _rng(4)
    worst = 0.0
    for _ in range(200):
        th = (0, 0, *_cplx(rng, 2, 1.5))
        p0x, p01, px1 = monodromy.taylor_branch_traces(th, _cplx(rng, None, 2))
        d = monodromy.MonodromyData.from_theta(th, p0x, px1, p01)
        worst = max(worst, abs(d.residual()))
    return worst < 1e-10, f"max residual {worst:.2e}"


@golden("monodromy.a_sigma_product.half")
def _():
    th = (0, 0, 0.3, 1.2)
    A2 = monodromy.a_squared(0.5, th)
    P = monodromy.a_sigma_product(0.5, th)
    return close(A2, 0.25 / 4, 1e-15) and close(P, 16, 1e-13), f"A^2 = {A2}, product = {P}"


@golden("monodromy.a_sigma_product.singular")
def _():
    try:
        monodromy.a_sigma_product(0.5, (0.2, 0.3, 0, 1))
    except SingularA:
        return True, "SingularA raised"
    return False, "no error"


@golden("monodromy.a_sigma_product.even")
def _():
    rng = _rng(5)
    th = (0.3, 0.2, 0.4, 1.7)
    worst = max(abs(monodromy.a_sigma_product(s, th) - monodromy.a_sigma_product(-s, th))
                for s in _cplx(rng, 50))
    return worst < 1e-12, f"max difference {worst:.2e}"


# -- symmetry -------------------------------------------------------------------------

@golden("symmetry.theta.swap_twice")
def _():
    rng = _rng(6)
    ok = all(symmetry.apply_to_theta("swapxy", symmetry.apply_to_theta("swapxy", t)).equivalent(ThetaClass(*t))
             for t in (_cplx(rng, 4) for _ in range(50)))
    return ok, "SwapXY^2 = id on 50 random theta"


@golden("symmetry.theta.permute_cp2")
def _():
    t = symmetry.apply_to_theta("permute01", (0, 0, 0, 4))
    return t.equivalent(ThetaClass(0, 0, 0, 4)), f"{t.as_tuple()}"


@golden("symmetry.theta.swap_cp2")
def _():
    t = symmetry.apply_to_theta("swapxy", (0, 0, 0, 4))
    return t.equivalent(ThetaClass(3, 0, 0, 1)), f"{t.as_tuple()}"


@golden("symmetry.point.permute")
def _():
    p = symmetry.apply_to_point("permute01", 0.3, 0.7)
    return np.allclose(p, (0.7, 0.3), atol=1e-15), f"{p}"


@golden("symmetry.point.invert")
def _():
    p = symmetry.apply_to_point("invx", 0.5, 0.2)
    return np.allclose(p, (2, 0.4), atol=1e-15), f"{p}"


@golden("symmetry.point.swap")
def _():
    p = symmetry.apply_to_point("swapxy", 0.5, 0.2)
    return np.allclose(p, (0.5, 2.5), atol=1e-15), f"{p}"


@golden("symmetry.traces.permute_picard")
def _():
    d = symmetry.apply_to_traces("permute01", _md((2, 2, 2, -2), (1, 1, 1)))
    pij = (d.p0x, d.px1, d.p01)
    return np.allclose(pij, (1, 1, -2), atol=1e-14) and abs(d.residual()) < 1e-14, f"p_ij' = {pij}"


@golden("symmetry.traces.swap_signs")
def _():
    # (p0x, p01, px1) = (0, 5, -3)
    d = symmetry.apply_to_traces("swapxy", _md((0.3, 0.4, 0.5, 0.6), (0, -3, 5)))
    pij = (d.p0x, d.p01, d.px1)
    return np.allclose(pij, (0, -5, -3), atol=1e-15), f"(p0x, p01, px1)' = {pij}"


@golden("symmetry.traces.swap_twice")
def _():
    rng = _rng(7)
    d = _md(_cplx(rng, 4), _cplx(rng, 3))
    e = symmetry.apply_to_traces("swapxy", symmetry.apply_to_traces("swapxy", d))
    return np.allclose(d.as_tuple(), e.as_tuple(), atol=1e-15), "SwapXY^2 = id"


_LOG_THETA = (0.45, 0.2, 0.3, 1.6)


@golden("symmetry.transport.log_under_swap")
def _():
    b = series.expand_branch("LogRow2", {"a": 0.3}, _LOG_THETA, 3)
    tb = symmetry.transport_expansion("swapxy", b)
    t0, tx, t1, ti = tb.theta.as_tuple()
    c2 = tb.coefficients[(0, 0, 2)]
    want = 4 / (t1 * t1 - (ti - 1) ** 2)
    # x/y = 1 / (c2 ln^2 x + ...)
    return tb.inverse and tb.power == 0 and close(1 / c2, want, 1e-12, rel=True), f"1/c2 = {1 / c2}, expected {want}"


@golden("symmetry.transport.power_to_inverse_oscillatory")
def _():
    th = (0.3, 0.2, 0.4, 1.7)
    nu = 0.35
    b = series.expand_branch("PowerGeneric", {"sigma": 2j * nu, "a": 0.8 + 0.1j}, th, 4)
    tb = symmetry.transport_expansion("swapxy", b)
    al, _, ga, _ = params.coefficients_from_theta(tb.theta).as_tuple()
    B = (2 * nu * nu + ga - al) / (4 * nu * nu)
    A2 = al / (2 * nu * nu) + B * B
    c = tb.coefficients
    # x/y = 1/(A sin(2 nu ln x + phi) + B): leading level is (-A e^{-i phi}/2i, B, A e^{i phi}/2i)
    got_B, got_A2 = c[(0, 0, 0)], 4 * c[(0, 1, 0)] * c[(0, -1, 0)]
    ok = tb.inverse and close(got_B, B, 1e-12, rel=True) and close(got_A2, A2, 1e-12, rel=True)
    return ok, f"B {got_B} vs {B}; A^2 {got_A2} vs {A2}"


@golden("symmetry.transport.log_permute")
def _():
    a = 0.3
    b = series.expand_branch("LogRow2", {"a": a}, _LOG_THETA, 4)
    tb = symmetry.transport_expansion("permute01", b)
    t0, tx, t1, ti = tb.theta.as_tuple()
    x = 1 - 1e-4
    s = 1 - x
    Ls = math.log(s)
    display = 1 - s * ((tx * tx - t1 * t1) / 4 * (Ls + a) ** 2 + t1 * t1 / (t1 * t1 - tx * tx))
    v = series.evaluate_value(tb, x)
    rel = abs(1 - v - (1 - display)) / abs(1 - display)
    return tb.criticalPoint == "1" and rel < 1e-2, f"relative deviation of 1-y from the display {rel:.2e}"


# -- series ---------------------------------------------------------------------------

@golden("series.residual.y_equals_x_control")
def _():
    generic = residual_at_identity((0.3, 0.2, 0.4, 1.7))
    degenerate = residual_at_identity((0.3, 0, 0.4, 1.7))
    return abs(generic) > 1e-6 and abs(degenerate) < 1e-15, f"R(y=x): generic {abs(generic):.2e}, theta_x=0 {abs(degenerate):.1e}"


def residual_at_identity(theta, x=0.1):
    # y = x: D y = x, D^2 y = x with D = x d/dx
    return series.residual_form(theta).pointwise(x, x, x, x)


@golden("series.residual.taylor_order7",
        expected_failure="the truncated two-term Taylor branch leaves a residual of order x^5, not x^7")
def _():
    b = series.expand_branch("TaylorRow3", {"a": 2}, (0, 0, 0.4, 1.7), 2)
    o = series.formal_residual_order(b)
    return o >= 7, f"leading residual order {o}"


@golden("series.residual.taylor_order5")
def _():
    b = series.expand_branch("TaylorRow3", {"a": 2}, (0, 0, 0.4, 1.7), 2)
    o = series.formal_residual_order(b)
    return o == 5, f"leading residual order {o}"


@golden("series.residual.on_trajectory")
def _():
    th = (0, 0, 0, 1)
    P = params.coefficients_from_theta(th)
    b = series.expand_branch("TaylorRow3", {"a": 2}, th, 10)
    x0, h = 2e-2, 1e-3
    y0, dy0 = series.series_with_derivative(b, x0)
    path = [x0 + k * h for k in range(1, 11)]
    tr = oracle.integrate(P, x0, y0, dy0, path, tol=1e-13)
    xs = np.array(tr.x)
    keep = [int(np.argmin(abs(xs - p))) for p in [x0] + path]
    ys = tr.y()[keep]
    dys = tr.dy()[keep]
    form = series.residual_form(th)
    worst = 0.0
    for i in range(2, 9):
        x = xs[keep[i]]
        d2 = (-ys[i - 2] + 16 * ys[i - 1] - 30 * ys[i] + 16 * ys[i + 1] - ys[i + 2]) / (12 * h * h)
        y, dy = ys[i], dys[i]
        R = form.pointwise(x, y, x * dy, x * dy + x * x * d2)
        scale = abs(form.pointwise(x, y, x * dy, x * dy)) + abs(form.pointwise(x, y, x * dy, 0))
        worst = max(worst, abs(R) / scale)
    return worst < 1e-6, f"max relative residual {worst:.2e}"


@golden("series.expand.taylor_a2")
def _():
    b = series.expand_branch("taylor6", {"a": 2}, (0, 0, 0, 1), 2)
    c = b.coefficients
    return close(c[(1, 0, 0)], 2, 1e-15) and close(c[(2, 0, 0)], -1, 1e-15), f"{c}"


@golden("series.expand.power_B")
def _():
    th = (0.3, 0.2, 0.4, 1.7)
    s = 0.7j
    b = series.expand_branch("PowerGeneric", {"sigma": s, "a": 1.1}, th, 3)
    want = (0.09 - 0.04 + s * s) / (2 * s * s)
    return close(b.coefficients[(1, 0, 0)], want, 1e-14), f"B = {b.coefficients[(1, 0, 0)]}"


@golden("series.expand.invosc_AB")
def _():
    th = (0.3, 0.2, 0.4, 1.7)
    nu, phi = 0.4, 0.2
    al, _, ga, _ = params.coefficients_from_theta(th).as_tuple()
    b = series.expand_branch("InvOscNuPhi", {"nu": nu, "phi": phi}, th, 0)
    B = (2 * nu * nu + ga - al) / (4 * nu * nu)
    A = -cmath.sqrt(al / (2 * nu * nu) + B * B)
    c = b.coefficients
    ok = (close(c[(0, 0, 0)], B, 1e-14) and close(c[(0, 1, 0)], A / 2j * cmath.exp(1j * phi), 1e-14)
          and close(c[(0, -1, 0)], -A / 2j * cmath.exp(-1j * phi), 1e-14))
    return ok, f"A = {A}, B = {B}"


@golden("series.evaluate.taylor_point")
def _():
    b = series.expand_branch("TaylorRow3", {"a": 2}, (0, 0, 0, 1), 10)
    v = series.evaluate_value(b, 0.01)
    return abs(v - 0.0199) < 1e-5, f"value {v}"


_PG_THETA = (0, 0.3, 0.7, 1.4)


@golden("series.evaluate.power_slope")
def _():
    b = series.expand_branch("PowerGeneric", {"sigma": 0.3, "a": 1}, _PG_THETA, 8)
    xs = np.geomspace(1e-4, 1e-3, 25)
    ys = np.array([series.evaluate_value(b, x) for x in xs])
    slope = np.polyfit(np.log(xs), np.log(np.abs(ys)), 1)[0]
    return abs(slope - 0.7) < 1e-3, f"slope {slope:.6f}"


@golden("series.evaluate.limit_zero")
def _():
    vals = []
    for b in (series.expand_branch("PowerGeneric", {"sigma": 0.3, "a": 1}, _PG_THETA, 6),
              series.expand_branch("TaylorRow3", {"a": 2}, (0, 0, 0, 1), 6),
              series.expand_branch("PowerGeneric", {"sigma": 0.4 + 0.3j, "a": 1}, (0.3, 0.2, 0.4, 1.7), 6)):
        vals.append(abs(series.evaluate_value(b, 1e-14)))
    return max(vals) < 1e-8, f"|y(1e-14)| = {max(vals):.2e}"


@golden("series.sin_form.phi_zero")
def _():
    th = (0.3, 0.2, 0.4, 1.7)
    s = 0.8j
    A, _, _ = series.sin_form_from_cosh_form(s, 1.0, th)
    _, phi, _ = series.sin_form_from_cosh_form(s, A / 2j, th)
    d = abs(cmath.exp(1j * phi) - 1)
    return d < 1e-13, f"phi = {phi}"


@golden("series.sin_form.A_sign")
def _():
    A, phi = 0.7 + 0.1j, 0.3 - 0.2j
    a1 = series.cosh_form_from_sin_form(A, phi)
    a2 = series.cosh_form_from_sin_form(-A, phi + math.pi)
    return close(a1, a2, 1e-14), f"a = {a1} and {a2}"


@golden("series.sin_form.grid_identity")
def _():
    th = (0.3, 0.2, 0.4, 1.7)
    s, a = 0.8j, 0.6 - 0.3j
    A, phi, B = series.sin_form_from_cosh_form(s, a, th)
    b = series.expand_branch("PowerGeneric", {"sigma": s, "a": a}, th, 1)
    c = b.coefficients
    worst = 0.0
    for k in range(2, 7):
        for t in np.linspace(-2, 2, 5):
            L = complex(-k * math.log(10), t)
            lead = cmath.exp(L) * (c[(1, -1, 0)] * cmath.exp(-s * L) + c[(1, 0, 0)] + c[(1, 1, 0)] * cmath.exp(s * L))
            v = series.sin_form_value(s, A, phi, B, CoveringPoint(L.real, L.imag))
            worst = max(worst, abs(v - lead) / abs(lead))
    return worst < 1e-12, f"max relative difference {worst:.2e}"


# -- shimomura ------------------------------------------------------------------------

_SH_THETA = (0.3, 0.2, 0.4, 1.7)


@golden("shimomura.value.v0_limit")
def _():
    br = shimomura.v_coefficients(0.3, 1, _SH_THETA, 4)
    x = 1e-12
    y = shimomura.shimomura_value(br, x, v=0, check_domain=False)
    r = y / x**0.7
    return abs(r - 1) < 1e-2, f"y/x^0.7 = {r}"


def _sigma0_points(br, n, L_range=(-12.0, -5.0)):
    path = shimomura.SigmaPath(CoveringPoint(L_range[1], 0.0), 0.0, br.sigma)
    # start where |t3| = 0.03
    s = complex(br.sigma)
    L0 = L_range[1]
    arg0 = (s.real * L0 - math.log(abs(br.a)) - math.log(0.03)) / s.imag
    path = shimomura.SigmaPath(CoveringPoint(L0, arg0), 0.0, s)
    return path.points(np.linspace(*L_range, n))


@golden("shimomura.value.sigma0_vs_sin_form")
def _():
    s, a = 0.4 + 0.3j, 0.7 - 0.2j
    br = shimomura.v_coefficients(s, a, _SH_THETA, 8)
    b = series.expand_branch("PowerGeneric", {"sigma": s, "a": a}, _SH_THETA, 12)
    worst = 0.0
    for cp in _sigma0_points(br, 12, (-14.0, -8.0)):
        ys = br.value(cp, check_domain=False)
        yp = series.evaluate_value(b, cp)
        worst = max(worst, abs(ys - yp) / abs(yp))
    return worst < 1e-10, f"max relative difference {worst:.2e}"


@golden("shimomura.value.sigma1_reciprocal")
def _():
    s, a = 0.4 + 0.3j, 0.7 - 0.2j
    br = shimomura.v_coefficients(s, a, _SH_THETA, 8)
    Rl = br.reciprocal_laurent()
    A2, B = shimomura.invasi_constants(s, _SH_THETA)
    cm, c0, cp_ = Rl.c[0, 0], Rl.c[1, 0], Rl.c[2, 0]
    ok = close(c0, B, 1e-12, rel=True) and close(cm * cp_, A2 / (4 * (1 - s) ** 2), 1e-12, rel=True)
    path = shimomura.SigmaPath(CoveringPoint.of(1e-2), 1.0, s)
    worst = 0.0
    for L in (-10.0, -14.0, -18.0):
        cp = path.at(L)
        t2, t3 = br.variables(cp)
        y = br.value(cp, check_domain=False)
        approx = cm / t2 + c0 + cp_ * t2
        worst = max(worst, abs(1 / y - approx) / abs(approx) / abs(t3))
    return ok and worst < 2, f"constant term {c0} vs {B}; deviation / |t3| up to {worst:.2f}"


@golden("shimomura.v.power_leading_terms")
def _():
    s, a = 0.4 + 0.3j, 1.0
    br = shimomura.v_coefficients(s, a, _SH_THETA, 4)
    Y = br.reciprocal_laurent().inverse()  # y / t2
    b = series.expand_branch("PowerGeneric", {"sigma": s, "a": a}, _SH_THETA, 2)
    worst = 0.0
    for (n, m, _), c in b.coefficients.items():
        i, j = n - 1, n + m
        if 0 <= i and 0 <= j and i + j <= 3:
            worst = max(worst, abs(Y.c[i, j] - c))
    return worst < 1e-12, f"max coefficient difference {worst:.2e}"


@golden("shimomura.v.a_independent")
def _():
    b1 = shimomura.v_coefficients(0.4 + 0.3j, 0.7, _SH_THETA, 6)
    b2 = shimomura.v_coefficients(0.4 + 0.3j, 1.9 - 0.4j, _SH_THETA, 6)
    d = float(np.abs(b1.V.c - b2.V.c).max())
    return d < 1e-12, f"max difference {d:.2e}"


@golden("shimomura.v.vanishes_on_paths")
def _():
    s = 0.4 + 0.3j
    br = shimomura.v_coefficients(s, 0.7, _SH_THETA, 6)
    path = shimomura.SigmaPath(CoveringPoint.of(1e-2), 0.5, s)
    vals = [abs(br.v(path.at(L))) for L in (-10.0, -20.0, -40.0)]
    return vals[0] > vals[1] > vals[2] and vals[2] < 1e-6, f"|v| = {vals}"


@golden("shimomura.domain.N0_strip")
def _():
    s, a = 0.2 + 0.7j, 1.3
    rule = shimomura.aya_rule(s, a, _SH_THETA)
    d1 = shimomura.domain_for_N(s, rule, 0, 1)
    d2 = shimomura.domain_for_N(s, rule, 0, -1)
    L = -12.0
    strip = shimomura.separating_strip(d1, d2, L)
    return strip is not None, f"strip at ln|x| = {L}: {strip}"


@golden("shimomura.domain.boundary_slopes")
def _():
    s = 0.2 + 0.7j
    d = shimomura.CriticalDomain(0.1, s, 1.3)
    (lo1, hi1), (lo2, hi2) = d.bounds(-10.0), d.bounds(-11.0)
    return close(lo1 - lo2, s.real, 1e-13) and close(hi1 - hi2, s.real - 1, 1e-13), \
        f"slopes {lo1 - lo2:.6f}, {hi1 - hi2:.6f}"


@golden("shimomura.domain.sigma0_across_strip")
def _():
    # for Re sigma = 0 the sigma and -sigma expansions with a(-sigma) from the
    # reflection relation are the same function
    th = _SH_THETA
    s, a = 0.6j, 0.7 - 0.2j
    b1 = series.expand_branch("PowerGeneric", {"sigma": s, "a": a}, th, 10)
    b2 = series.expand_branch("PowerGeneric", {"sigma": -s, "a": monodromy.reflected_a(s, a, th)}, th, 10)
    worst = 0.0
    for cp in (CoveringPoint(-8, 0.3), CoveringPoint(-10, -1.0), CoveringPoint(-12, 2.0)):
        v1, v2 = series.evaluate_value(b1, cp), series.evaluate_value(b2, cp)
        worst = max(worst, abs(v1 - v2) / abs(v1))
    return worst < 1e-10, f"max relative difference {worst:.2e}"


@golden("shimomura.classify.radial_oscillatory")
def _():
    r = shimomura.classify_approach(0.0, 0.8j)
    return r["tag"] == "oscillatory", f"{r}"


@golden("shimomura.classify.inverse")
def _():
    s = 0.3 + 0.8j
    r = shimomura.classify_approach(s.real - 1, s)
    return r["tag"] == "inverse-oscillatory", f"{r}"


@golden("shimomura.classify.power")
def _():
    r = shimomura.classify_approach(0.37, 0.3 + 0.8j)
    return r["tag"] == "power", f"{r}"


# -- elliptic -------------------------------------------------------------------------

def agm_omega1(x: float) -> float:
    a, b = 1.0, math.sqrt(1 - x)
    for _ in range(60):
        a, b = (a + b) / 2, math.sqrt(a * b)
        if abs(a - b) < 1e-17 * a:
            break
    return math.pi / (2 * a)


def lattice_sum_p(z, w1, w2, Ms=(100, 200, 400)):
    """Brute-force Weierstrass sum over |m|, |n| <= M, extrapolated in M."""
    vals = []
    for M in Ms:
        m = np.arange(-M, M + 1)
        W = (2 * m[:, None] * w1 + 2 * m[None, :] * w2).ravel()
        W = W[W != 0]
        vals.append(1 / z**2 + np.sum(1 / (z - W) ** 2 - 1 / W**2))
    r1 = (4 * vals[1] - vals[0]) / 3
    r2 = (4 * vals[2] - vals[1]) / 3
    return (16 * r2 - r1) / 15


@golden("elliptic.omega1_at_zero")
def _():
    w = elliptic.half_periods(1e-20).omega1
    return close(w, math.pi / 2, 1e-15), f"omega1 = {w}"


@golden("elliptic.omega2_at_half")
def _():
    hp = elliptic.half_periods(0.5)
    return close(hp.omega2, 1j * hp.omega1, 1e-14, rel=True), f"omega2 = {hp.omega2}, omega1 = {hp.omega1}"


@golden("elliptic.omega1_vs_agm")
def _():
    worst = max(abs(elliptic.half_periods(x).omega1 - agm_omega1(x)) / agm_omega1(x)
                for x in np.linspace(0.01, 0.89, 45))
    return worst < 1e-12, f"max relative error {worst:.2e}"


_W1, _W2 = 1.3 + 0.1j, 0.4 + 1.1j


@golden("elliptic.p_even")
def _():
    rng = _rng(8)
    worst = max(abs(elliptic.weierstrass_p(z, _W1, _W2) - elliptic.weierstrass_p(-z, _W1, _W2))
                / abs(elliptic.weierstrass_p(z, _W1, _W2)) for z in _cplx(rng, 20))
    return worst < 1e-12, f"max relative difference {worst:.2e}"


@golden("elliptic.p_periodic")
def _():
    rng = _rng(9)
    worst = max(abs(elliptic.weierstrass_p(z + 2 * _W1, _W1, _W2) - elliptic.weierstrass_p(z, _W1, _W2))
                / abs(elliptic.weierstrass_p(z, _W1, _W2)) for z in _cplx(rng, 20))
    return worst < 1e-12, f"max relative difference {worst:.2e}"


@golden("elliptic.p_vs_lattice_sum")
def _():
    rng = _rng(10)
    worst = 0.0
    for z in _cplx(rng, 3, 0.6):
        p = elliptic.weierstrass_p(z, _W1, _W2)
        worst = max(worst, abs(p - lattice_sum_p(z, _W1, _W2)) / abs(p))
    return worst < 1e-8, f"max relative difference {worst:.2e}"


@golden("elliptic.nu2_relation")
def _():
    p0x = 0.7 - 0.4j
    nu2 = elliptic.nu2_from_trace(p0x)
    return close(2 * cmath.cos(math.pi * nu2), -p0x, 1e-13), f"nu2 = {nu2}"


@golden("elliptic.periodicity_relabel")
def _():
    br = elliptic.v_elliptic_coefficients(0.3 + 0.1j, 0.6, _SH_THETA, 6)
    worst = 0.0
    for x in (1e-3, 2e-4 * cmath.exp(0.5j), 5e-5):
        hp = elliptic.half_periods(x)
        u = br.argument(x)
        base = elliptic.weierstrass_p(u, hp.omega1, hp.omega2)
        for N in (1, -1, 2):
            shifted = elliptic.weierstrass_p(u + 2 * N * hp.omega2, hp.omega1, hp.omega2)
            worst = max(worst, abs(shifted - base) / abs(base))
        worst = max(worst, abs(elliptic.weierstrass_p(-u, hp.omega1, hp.omega2) - base) / abs(base))
    return worst < 1e-10, f"max relative difference {worst:.2e}"


@golden("elliptic.v0_leading_behaviour")
def _():
    from .bivariate import Bivariate
    nu1, nu2 = 0.2, 0.7
    br = elliptic.EllipticBranch(nu1, nu2, ThetaClass(*_SH_THETA), 4, Bivariate.zeros(4), 0.1)
    s, a = br.shimomura_constants()
    b = series.expand_branch("PowerGeneric", {"sigma": s, "a": a}, _SH_THETA, 1)
    x = 1e-10
    ye = elliptic.elliptic_value(br, x, check_domain=False)
    yp = series.evaluate_value(b, x)
    rel = abs(ye - yp) / abs(yp)
    return rel < 1e-2, f"relative difference {rel:.2e} at x = {x}"


def elliptic_vs_shimomura(n: int = 100, seed: int = 0) -> float:
    """Max relative difference of the two representations at n points of the common domain."""
    th = (0.3, 0.2, 0.4, 1.7)
    eb = elliptic.v_elliptic_coefficients(0.3 + 0.1j, 0.6 - 0.3j, th, 10)
    s, a = eb.shimomura_constants()
    sb = shimomura.v_coefficients(s, a, th, 10)
    rng = _rng(seed)
    worst, count = 0.0, 0
    while count < n:
        cp = CoveringPoint(rng.uniform(-14, -6), rng.uniform(-6, 6))
        if not (eb.in_domain(cp) and sb.domain().contains(cp)):
            continue
        if max(map(abs, eb.variables(cp))) >= 0.02:
            continue
        ys = sb.value(cp)
        worst = max(worst, abs(eb.value(cp) - ys) / abs(ys))
        count += 1
    return worst


@golden("elliptic.vs_shimomura")
def _():
    w = elliptic_vs_shimomura()
    return w < 1e-8, f"max relative difference {w:.2e} on 100 points"


# -- poles ----------------------------------------------------------------------------

_POLE_THETA = (0.3, 0.2, 0.4, 1.7)


@golden("poles.coefficients.B")
def _():
    nu = 0.4
    rec = poles.reciprocal_coefficients(nu, 0.3, _POLE_THETA, 3, digits=30)
    al, _, ga, _ = params.coefficients_from_theta(_POLE_THETA).as_tuple()
    B = (2 * nu * nu + ga - al) / (4 * nu * nu)
    A10 = poles._c(rec.level1()[1])
    return close(A10, B, 1e-14), f"A10 = {A10}"


@golden("poles.coefficients.phi_invariance")
def _():
    nu = 0.4
    b1 = series.expand_branch("InvOscNuPhi", {"nu": nu, "phi": 0.3}, _POLE_THETA, 4)
    b2 = series.expand_branch("InvOscNuPhi", {"nu": nu, "phi": -1.1 + 0.2j}, _POLE_THETA, 4)
    worst = 0.0
    for (n, m, l), c in b1.coefficients.items():
        a1 = c * cmath.exp(-1j * m * 0.3)
        a2 = b2.coefficients[(n, m, l)] * cmath.exp(-1j * m * (-1.1 + 0.2j))
        worst = max(worst, abs(a1 - a2) / max(1.0, abs(a1)))
    return worst < 1e-12, f"max difference of A_nm {worst:.2e}"


@golden("poles.coefficients.first_row")
def _():
    rec = poles.reciprocal_coefficients(0.4, 0.3, _POLE_THETA, 4, digits=30)
    row = sorted(m for (n, m), c in rec.coefficients().items() if n == 1 and abs(c) > 1e-25)
    return row == [-1, 0, 1], f"m = {row}"


@golden("poles.lattice.ratio")
def _():
    rec = poles.cp2_expansion(3, 30)
    lat = dict(((k, j), x) for k, j, x in poles.zero_lattice(rec, range(0, 3)))
    nu = float(rec.nu.real)
    worst = max(abs(abs(poles._c(lat[(k + 1, j)] / lat[(k, j)])) - math.exp(-math.pi / nu)) / math.exp(-math.pi / nu)
                for k in range(2) for j in (1, 2))
    r = math.exp(-math.pi / 0.30634)
    return worst < 1e-14 and abs(r - 3.52e-5) < 5e-8, f"relative error {worst:.1e}; e^(-pi/0.30634) = {r:.4e}"


@golden("poles.lattice.cp2_arg")
def _():
    rec = poles.cp2_expansion(3, 30)
    worst = max(abs(cmath.phase(poles._c(x)) + math.pi / 2) for _, _, x in poles.zero_lattice(rec, range(0, 3)))
    return worst < 1e-10, f"max |arg x_k + pi/2| = {worst:.1e}"


@golden("poles.lattice.y1_vanishes")
def _():
    rec = poles.cp2_expansion(3, 30)
    A11, A10, A1m = (poles._c(c) for c in rec.level1())
    eph = poles._c(rec.eiphi())
    nu = float(rec.nu.real)
    worst = 0.0
    for _, _, x in poles.zero_lattice(rec, range(0, 3)):
        t = eph * cmath.exp(2j * nu * cmath.log(poles._c(x)))
        worst = max(worst, abs(A11 * t + A10 + A1m / t) / abs(A10))
    return worst < 1e-10, f"max |y_1(x_k)| = {worst:.1e}"


CP2_DELTAS = {(3, 1): 0.1792, (3, 2): 0.3555, (4, 1): -0.05422, (4, 2): -0.2305}


def _cp2_deltas():
    rec = poles.cp2_expansion(5, 40)
    return {(N, j): complex(poles._c(v)) for j in (1, 2) for N, v in poles.pole_corrections(rec, j, 4).items()}


@golden("poles.corrections.cp2_delta3")
def _():
    d = _cp2_deltas()
    ok = all(abs(d[(3, j)] - CP2_DELTAS[(3, j)]) < 1e-3 for j in (1, 2))
    return ok, f"Delta3 = {d[(3, 1)].real:.7f}, {d[(3, 2)].real:.7f}"


@golden("poles.corrections.cp2_delta4")
def _():
    d = _cp2_deltas()
    ok = all(abs(d[(4, j)] - CP2_DELTAS[(4, j)]) < 1e-3 for j in (1, 2))
    return ok, f"Delta4 = {d[(4, 1)].real:.7f}, {d[(4, 2)].real:.7f}"


def _quadratic_deviation(equal_thetas: bool) -> float:
    rng = _rng(11)
    worst = 0.0
    for _ in range(4):
        nu = float(rng.uniform(0.2, 0.8))
        phi = complex(*rng.uniform(-1, 1, 2))
        t0, tx, t1 = rng.uniform(0, 1, 3)
        if equal_thetas:
            tx = -t0
        rec = poles.reciprocal_coefficients(nu, phi, (t0, tx, t1, 1.5), 4, digits=30)
        for j in (1, 2):
            worst = max(worst, abs(poles._c(poles.pole_corrections(rec, j, 3)[2]) + 0.5))
    return worst


@golden("poles.corrections.quadratic_all_theta",
        expected_failure="the quadratic coefficient is -1/2 only when theta_0^2 = theta_x^2; "
                         "Newton refinement confirms the reverted value")
def _():
    w = _quadratic_deviation(False)
    return w < 1e-20, f"max |Delta2 + 1/2| = {w:.1e}"


@golden("poles.corrections.quadratic")
def _():
    w = _quadratic_deviation(True)
    return w < 1e-20, f"max |Delta2 + 1/2| = {w:.1e} on theta_0^2 = theta_x^2"


@golden("poles.refine.cp2_order4")
def _():
    rec = poles.cp2_expansion(10, 60)
    worst = 0.0
    for k, j in ((0, 1), (0, 2), (1, 1)):
        xi, _, _ = poles.refine_pole(rec, k, j)
        pred = poles.predicted_pole(rec, k, j, 4)
        xk = abs(poles._c(poles.zero_lattice(rec, [k], [j])[0][2]))
        worst = max(worst, float(abs(xi - pred) / abs(xi)) / (10 * xk**3))
    return worst < 1, f"max (relative error) / (10 |x_k|^3) = {worst:.2e}"


@golden("poles.refine.first_level_exact")
def _():
    rec = poles.cp2_expansion(1, 40)
    xi, _, _ = poles.refine_pole(rec, 0, 1)
    x0 = poles.zero_lattice(rec, [0], [1])[0][2]
    d = float(abs(xi - x0) / abs(x0))
    return d < 1e-30, f"relative difference {d:.1e}"


@golden("poles.refine.residual")
def _():
    rec = poles.cp2_expansion(8, 40)
    res = max(float(poles.refine_pole(rec, k, j)[1]) for k, j in ((0, 1), (0, 2), (1, 2)))
    return res < 1e-12, f"max |1/y(xi)| = {res:.1e}"


@golden("poles.continue.identity")
def _():
    return poles.continue_branch(0.3, 0.2 + 0.1j, 0) == 0.2 + 0.1j, "n = 0"


@golden("poles.continue.lattice_shift")
def _():
    rec = poles.cp2_expansion(3, 30)
    nu, phi = complex(poles._c(rec.nu)).real, poles._c(rec.phi)
    L0 = poles._c(poles.zero_log(rec, 0, 1))
    rec2 = poles.ReciprocalExpansion(rec.nu, poles.continue_branch(nu, phi, 1), rec.theta, rec.order,
                                     rec.digits, rec.branch)
    L1 = poles._c(poles.zero_log(rec2, 0, 1))
    return close(L1.imag - L0.imag, -2 * math.pi, 1e-12), f"arg shift {L1.imag - L0.imag:.12f}"


def _continuation_grid(shift):
    th = _POLE_THETA
    nu, phi = 0.37, 0.4 + 0.1j
    b1 = series.expand_branch("InvOscNuPhi", {"nu": nu, "phi": phi}, th, 8)
    b2 = series.expand_branch("InvOscNuPhi", {"nu": nu, "phi": shift(nu, phi)}, th, 8)
    worst = 0.0
    for la in (-6.0, -8.0):
        for arg in (-2.5, -1.0, 0.5, 2.0):
            y1 = series.evaluate_value(b1, CoveringPoint(la, arg + 2 * math.pi))
            y2 = series.evaluate_value(b2, CoveringPoint(la, arg))
            worst = max(worst, abs(y1 - y2) / abs(y1))
    return worst


@golden("poles.continue.grid_quoted_shift",
        expected_failure="one loop multiplies x^(2 i nu) by e^(-4 pi nu); the quoted shift 2 pi i nu is half of it")
def _():
    w = _continuation_grid(poles.continue_branch_literal)
    return w < 1e-10, f"max relative difference {w:.2e}"


@golden("poles.continue.grid")
def _():
    w = _continuation_grid(poles.continue_branch)
    return w < 1e-10, f"max relative difference {w:.2e}"


def _radius_pair(rec):
    A11, A10, A1m = (poles._c(c) for c in rec.level1())
    h = A10 / (2 * A11)
    r = cmath.sqrt(h * h - A1m / A11)
    return 1 / abs(r - h), 1 / abs(r + h)


@golden("poles.radius.symmetric")
def _():
    nu = 0.3
    th = (0.2, 0.1, 0, 1 + 2 * nu)  # alpha - gamma = 2 nu^2 makes A10 vanish
    rec = poles.reciprocal_coefficients(nu, 0.2, th, 3, digits=30)
    A10 = abs(poles._c(rec.level1()[1]))
    e1, e2 = _radius_pair(rec)
    ok = A10 < 1e-14 and close(e1, e2, 1e-13) and close(poles.radius_upper_bound(rec), e1, 1e-13)
    return ok, f"|A10| = {A10:.1e}; expressions {e1}, {e2}"


CP2_RADIUS = 1.0


@golden("poles.radius.cp2_regression")
def _():
    r = poles.radius_upper_bound(poles.cp2_expansion(3, 30))
    return close(r, CP2_RADIUS, 1e-12), f"r_max = {r!r}"


@golden("poles.radius.monotone")
def _():
    nu = 0.35
    rows = []
    # alpha = (theta_inf - 1)^2 / 2 < 0 pushes |B/A| past 1, where r_max leaves 1
    for tau in np.linspace(0.05, 1.55, 11):
        th = (0.2, 0.1, 0.3, 1 + 1j * tau)
        rec = poles.reciprocal_coefficients(nu, 0, th, 2, digits=30)
        A11, A10, _ = (poles._c(c) for c in rec.level1())
        rows.append((abs(A10 / (2j * A11)), poles.radius_upper_bound(rec)))
    rows.sort()
    r = [v for _, v in rows]
    ok = all(a >= b - 1e-14 for a, b in zip(r, r[1:])) and r[-1] < r[0]
    return ok, f"|B/A| -> r: {[(round(u, 3), round(v, 4)) for u, v in rows]}"


@golden("poles.cp2.nu")
def _():
    nu, _ = poles.cp2_reference_constants(30)
    return abs(float(nu) - 0.30634) < 1e-5, f"nu = {float(nu):.10f}"


@golden("poles.cp2.imphi_over_nu_quoted", expected_failure="Im phi / nu = pi; it is Im phi / (2 nu) that equals pi/2")
def _():
    nu, phi = poles.cp2_reference_constants(30)
    r = float(phi.imag / nu)
    return abs(r - math.pi / 2) < 1e-10, f"Im phi / nu = {r:.12f}"


@golden("poles.cp2.imphi_over_2nu")
def _():
    nu, phi = poles.cp2_reference_constants(30)
    r = float(phi.imag / (2 * nu))
    return abs(r - math.pi / 2) < 1e-10, f"Im phi / (2 nu) = {r:.12f}"


_LANCZOS_G = 7
_LANCZOS = (0.99999999999980993, 676.5203681218851, -1259.1392167224028, 771.32342877765313,
            -176.61502916214059, 12.507343278686905, -0.13857109526572012, 9.9843695780195716e-6,
            1.5056327351493116e-7)


def lanczos_gamma(z: complex) -> complex:
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * lanczos_gamma(1 - z))
    z -= 1
    x = _LANCZOS[0] + sum(c / (z + i) for i, c in enumerate(_LANCZOS[1:], 1))
    t = z + _LANCZOS_G + 0.5
    return math.sqrt(2 * math.pi) * t ** (z + 0.5) * cmath.exp(-t) * x


@golden("poles.cp2.gamma_modulus")
def _():
    nu, phi = poles.cp2_reference_constants(30)
    ref = abs(cmath.exp(1j * complex(phi)))
    n = float(nu)
    G = (1 + math.sqrt(5)) / 2
    z = (-(math.pi**2) * (G**4 + 1) ** 2 / (G**2 + 1) ** 2 * 2 ** (16j * n)
         * (1 - 2j * n) ** 2 * n * n / (1 + 2j * n) ** 2
         * lanczos_gamma(1 - 2j * n) ** 4 / lanczos_gamma(1 - 1j * n) ** 8)
    mine = 1 / abs(z)
    return abs(mine - ref) / ref < 1e-10, f"|e^(i phi)| = {ref:.15f} vs {mine:.15f}"


# -- ode oracle -----------------------------------------------------------------------

def cp2_pole_traversal():
    rec = poles.cp2_expansion(10, 30)
    nu, phi = poles.cp2_reference_constants(30)
    xi = poles._c(poles.refine_pole(rec, 0, 1)[0])
    th = poles.cp2_theta()
    b = series.expand_branch("InvOscNuPhi", {"nu": complex(nu), "phi": complex(phi)}, th, 10)
    x0, x1 = 1.5 * xi, 0.6 * xi
    y0, dy0 = series.series_with_derivative(b, x0)
    tr = oracle.integrate(params.coefficients_from_theta(th), x0, y0, dy0, [xi * (1 + 2e-5j), x1], tol=1e-12)
    return tr, xi, b, x1


@golden("oracle.integrate.pole_traversal")
def _():
    tr, xi, b, x1 = cp2_pole_traversal()
    kinds = [(f, t) for _, f, t in tr.switches]
    i = min((k for k, c in enumerate(tr.chart) if c == "x/y"), key=lambda k: abs(tr.u[k]))
    # simple zero of x/y: one Newton step from the closest sample lands on the pole
    est = tr.x[i] - tr.u[i] / tr.du[i]
    _, yend, _ = tr.final()
    yser = series.evaluate_value(b, x1)
    ok = ("y", "x/y") in kinds and ("x/y", "y") in kinds and tr.chart[-1] == "y"
    ok = ok and abs(est - xi) < 1e-6 * abs(xi) and abs(yend - yser) < 1e-7 * abs(yser)
    return ok, f"switches {kinds}; zero of x/y off by {abs(est - xi) / abs(xi):.1e} (relative); end value error {abs(yend - yser) / abs(yser):.1e}"


@golden("oracle.integrate.permute_equivariance")
def _():
    th = (0.3, 0.2, 0.4, 1.7)
    x0, y0, dy0 = 0.3 + 0.05j, 0.4 + 0.1j, 0.2 - 0.1j
    path = [0.45 + 0.2j, 0.6 + 0.1j]
    tr = oracle.integrate(params.coefficients_from_theta(th), x0, y0, dy0, path, tol=1e-12)
    _, y1, _ = tr.final()
    th2 = symmetry.apply_to_theta("permute01", th)
    X0, Y0 = symmetry.apply_to_point("permute01", x0, y0)
    _, _, DY0 = symmetry.apply_to_point_derivative("permute01", x0, y0, dy0)
    tr2 = oracle.integrate(params.coefficients_from_theta(th2), X0, Y0, DY0,
                           [symmetry.apply_to_point("permute01", p, 0)[0] for p in path], tol=1e-12)
    _, Y1, _ = tr2.final()
    want = symmetry.apply_to_point("permute01", path[-1], y1)[1]
    rel = abs(Y1 - want) / abs(want)
    return rel < 1e-7, f"relative difference {rel:.1e}"


def taylor_series_vs_oracle():
    th = (0, 0, 0, 1)
    b = series.expand_branch("TaylorRow3", {"a": 2}, th, 10)
    y0, dy0 = series.series_with_derivative(b, 1e-2)
    tr = oracle.integrate(params.coefficients_from_theta(th), 1e-2, y0, dy0, [5e-2], tol=1e-12)
    _, y, _ = tr.final()
    ys = series.evaluate_value(b, 5e-2)
    return abs(y - ys) / abs(ys)


@golden("oracle.integrate.taylor_series")
def _():
    rel = taylor_series_vs_oracle()
    return rel < 1e-8, f"relative error {rel:.1e}"


def power_exponent_fit():
    P = params.coefficients_from_theta(_PG_THETA)
    b = series.expand_branch("PowerGeneric", {"sigma": 0.3, "a": 1}, _PG_THETA, 8)
    y0, dy0 = series.series_with_derivative(b, 1e-3)
    tr = oracle.integrate(P, 1e-3, y0, dy0, [2e-6], tol=1e-11)
    return oracle.fit_critical_exponent(tr)


@golden("oracle.fit_exponent.power")
def _():
    e = power_exponent_fit()
    return abs(e - 0.7) < 1e-3, f"exponent {e}"


@golden("oracle.fit_exponent.taylor")
def _():
    th = (0, 0, 0, 1)
    b = series.expand_branch("TaylorRow3", {"a": 2}, th, 10)
    y0, dy0 = series.series_with_derivative(b, 1e-2)
    tr = oracle.integrate(params.coefficients_from_theta(th), 1e-2, y0, dy0, [2e-6], tol=1e-11)
    e = oracle.fit_critical_exponent(tr)
    return abs(e - 1) < 1e-3, f"exponent {e}"


@golden("oracle.fit_exponent.oscillatory")
def _():
    th = (0.3, 0.2, 0.4, 1.7)
    b = series.expand_branch("PowerGeneric", {"sigma": 2j, "a": 0.5}, th, 8)
    y0, dy0 = series.series_with_derivative(b, 1e-3)
    tr = oracle.integrate(params.coefficients_from_theta(th), 1e-3, y0, dy0, [2e-6], tol=1e-11)
    try:
        e = oracle.fit_critical_exponent(tr)
    except NonPowerLaw as err:
        return True, f"NonPowerLaw (rms {err.details.get('rms', float('nan')):.2e})"
    return False, f"fitted exponent {e}"


def _imaginary_power_fit():
    th = (0.3, 0.2, 0.4, 1.7)
    nu = 0.45
    # sin(i sigma ln x + phi) = sin(2 nu ln x + phi) for sigma = -2 i nu
    s, a = -2j * nu, 0.8 - 0.3j
    b = series.expand_branch("PowerGeneric", {"sigma": s, "a": a}, th, 6)
    xs = np.geomspace(1e-5, 1e-8, 300)
    vals = np.array([series.evaluate_value(b, x) / x for x in xs])
    f = oracle.fit_oscillation(xs, vals)
    A, phi, B = series.sin_form_from_cosh_form(s, a, th)
    return f, nu, phi, th


@golden("oracle.fit_oscillation.synthetic")
def _():
    f, nu, phi, _ = _imaginary_power_fit()
    dphi = abs(cmath.exp(2j * f.phi) - cmath.exp(2j * complex(phi)))
    return abs(f.nu - nu) < 1e-3 and dphi < 1e-2, f"nu {f.nu:.6f} vs {nu}; phi {f.phi} vs {phi}"


@golden("oracle.fit_oscillation.cp2_nu")
def _():
    nu, phi = poles.cp2_reference_constants(30)
    b = series.expand_branch("InvOscNuPhi", {"nu": complex(nu), "phi": complex(phi)}, poles.cp2_theta(), 8)
    xs = np.geomspace(1e-4, 1e-7, 300) * cmath.exp(-0.5j * math.pi + 0.4j)
    vals = np.array([1 / series.evaluate_value(b, x) for x in xs])
    f = oracle.fit_oscillation(xs, vals, form="1/y")
    return abs(f.nu - 0.3063) < 1e-3, f"nu {f.nu:.6f}"


@golden("oracle.fit_oscillation.B")
def _():
    f, nu, _, th = _imaginary_power_fit()
    B = -(th[0] ** 2 - th[1] ** 2 - 4 * nu * nu) / (8 * nu * nu)
    return abs(f.B - B) < 1e-3 * abs(B), f"B {f.B} vs {B}"


# -- cli ------------------------------------------------------------------------------

def _cli(argv):
    from . import cli
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = cli.main(argv)
    return code, out.getvalue(), err.getvalue()


@golden("cli.fricke_identity")
def _():
    code, out, _ = _cli(["fricke", "--p", "2,2,2,2,2,2,2"])
    import json
    r = json.loads(out)["abs"]
    return code == 0 and float(r) == 0, f"exit {code}, residual {r}"


@golden("cli.poles_cp2")
def _():
    code, out, _ = _cli(["poles", "--preset", "cp2", "--order", "4", "--k-min", "0", "--k-max", "1"])
    got = {}
    for line in out.splitlines():
        if line.startswith("# Delta"):
            key, val = line[2:].split("=")
            N, j = key.strip()[5:].strip(")").split("(")
            got[(int(N), int(j))] = complex(*map(float, val.split()))
    ok = code == 0 and all(abs(got[k] - v) < 1e-3 for k, v in CP2_DELTAS.items())
    return ok, f"exit {code}, {len(got)} Delta lines"


@golden("cli.expand_taylor6")
def _():
    import json
    code, out, _ = _cli(["expand", "--class", "taylor6", "--const", "a=2", "--order", "2"])
    c = json.loads(out)["coefficients"]
    ok = code == 0 and np.allclose(c["1,0,0"], [2, 0]) and np.allclose(c["2,0,0"], [-1, 0])
    return ok, f"exit {code}, coefficients {c}"


# -- runner ---------------------------------------------------------------------------

SUITES = {
    "series-oracle": ["oracle.integrate.taylor_series", "oracle.fit_exponent.power", "series.residual.on_trajectory"],
    "shimomura-elliptic": ["elliptic.vs_shimomura", "elliptic.v0_leading_behaviour", "shimomura.value.sigma0_vs_sin_form"],
    "poles-oracle": ["oracle.integrate.pole_traversal", "oracle.fit_oscillation.cp2_nu"],
}


def run(names=None, out=None) -> list[dict]:
    """Run the registry (or the named subset); returns one record per check."""
    rows = []
    for g in REGISTRY:
        if names and not any(g.name.startswith(n) for n in names):
            continue
        t = time.perf_counter()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            try:
                ok, detail = g.fn()
            except Exception as e:  # a crash is a failure with its message
                ok, detail = False, f"{type(e).__name__}: {e}"
        dt = time.perf_counter() - t
        if g.expected_failure:
            status = "XFAIL" if not ok else "XPASS"
        else:
            status = "PASS" if ok else "FAIL"
        rows.append({"name": g.name, "status": status, "seconds": round(dt, 3), "detail": detail,
                     "note": g.expected_failure})
        if out is not None:
            print(f"{status:5s} {g.name:48s} {dt:7.2f}s  {detail}", file=out)
    return rows
