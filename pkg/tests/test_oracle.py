import math

import numpy as np
import pytest
from numpy.polynomial import chebyshev as C

from painleve6 import oracle, params
from painleve6.errors import FitDivergence, NonPowerLaw, SingularityOnPath

TH = (0.3, 0.2, 0.4, 1.7)
P = params.coefficients_from_theta(TH)
X0, Y0, DY0 = 0.3 + 0.05j, 0.4 + 0.1j, 0.2 - 0.1j
PATH = [0.45 + 0.2j, 0.6 + 0.1j]


def test_chebyshev_residual():
    """A Chebyshev fit of y' along a segment, differentiated, satisfies PVI."""
    tol = 1e-10
    a, b, n = X0, 0.35 + 0.08j, 25
    s = (1 - np.cos(np.pi * (np.arange(n) + 0.5) / n)[::-1]) / 2
    pts = a + s * (b - a)
    tr = oracle.integrate(P, X0, Y0, DY0, list(pts), tol=tol)
    xs = np.array(tr.x)
    idx = [int(np.argmin(abs(xs - p))) for p in pts]
    u, du = tr.y()[idx], tr.dy()[idx]
    t = 2 * s - 1
    cr, ci = C.chebfit(t, du.real, 18), C.chebfit(t, du.imag, 18)
    d2 = (C.chebval(t, C.chebder(cr)) + 1j * C.chebval(t, C.chebder(ci))) * 2 / (b - a)
    rhs = np.array([oracle.pvi_rhs(x, y, dy, *P.as_tuple()) for x, y, dy in zip(pts, u, du)])
    assert np.max(abs(d2 - rhs)) / np.max(abs(rhs)) < 10 * tol


def test_chart_independence():
    y1 = oracle.integrate(P, X0, Y0, DY0, PATH, tol=1e-12).final()[1]
    w0, dw0 = oracle.to_chart("1/y", X0, Y0, DY0)
    y2 = oracle.integrate(P, X0, w0, dw0, PATH, tol=1e-12, chart="1/y").final()[1]
    assert abs(y1 - y2) < 1e-8 * abs(y1)


def test_self_convergence():
    a = oracle.integrate(P, X0, Y0, DY0, PATH, tol=1e-8).final()[1]
    b = oracle.integrate(P, X0, Y0, DY0, PATH, tol=5e-9).final()[1]
    assert abs(a - b) < 10 * 5e-9


@pytest.mark.parametrize("chart", oracle.CHARTS)
def test_chart_round_trip(chart):
    u, du = oracle.to_chart(chart, X0, Y0, DY0)
    assert np.allclose(oracle.from_chart(chart, X0, u, du), (Y0, DY0), atol=1e-15)


@pytest.mark.parametrize("chart", ["x/y", "1/y", "y-1"])
def test_chart_equations_agree(chart):
    """u'' from each chart's equation equals the transformed PVI y''."""
    sysm = oracle._System(P)
    h = 1e-5
    u, du = oracle.to_chart(chart, X0, Y0, DY0)
    d2 = sysm.second(chart, X0, u, du)
    d2y = oracle.pvi_rhs(X0, Y0, DY0, *P.as_tuple())
    # u(x) from the y Taylor polynomial, second difference
    ys = [Y0 + DY0 * e + d2y * e * e / 2 for e in (-h, 0, h)]
    dys = [DY0 + d2y * e for e in (-h, 0, h)]
    us = [oracle.to_chart(chart, X0 + e, y, dy)[0] for e, y, dy in zip((-h, 0, h), ys, dys)]
    fd = (us[0] - 2 * us[1] + us[2]) / (h * h)
    assert abs(d2 - fd) < 1e-4 * max(1, abs(d2))


def test_singularity_on_path():
    with pytest.raises(SingularityOnPath):
        oracle.integrate(P, 0.5, 0.3, 0.1, [-0.5 + 5e-7j])
    with pytest.raises(SingularityOnPath):
        oracle.integrate(P, 0.5, 0.3, 0.1, [1.0])
    oracle.integrate(P, 0.5, 0.3, 0.1, [0.5 + 0.1j, -0.5 + 0.1j])


def test_fit_oscillation_recovers_synthetic():
    L = np.linspace(-12, -4, 400)
    x = np.exp(L + 0.3j)
    nu, phi, A, B = 0.41, 0.7 + 0.2j, 0.9 - 0.1j, 0.3
    f = A * np.sin(2 * nu * np.log(x) + phi) + B
    fit = oracle.fit_oscillation(x, f)
    assert abs(fit.nu - nu) < 1e-10 and abs(fit.B - B) < 1e-10
    assert abs(fit.A * np.sin(2 * nu * np.log(x[7]) + fit.phi) - A * np.sin(2 * nu * np.log(x[7]) + phi)) < 1e-10


def test_fit_failures():
    x = np.exp(np.linspace(-8, -2, 200))
    tr = oracle.Trajectory()
    for xv in x:
        tr.append(xv, np.exp(1 / xv ** 0.3), 0, "y")
    with pytest.raises(NonPowerLaw):
        oracle.fit_critical_exponent(tr, decades=2)
    rng = np.random.default_rng(0)
    with pytest.raises(FitDivergence):
        oracle.fit_oscillation(x, rng.normal(size=x.size), nu0=0.5)


def test_fit_exponent_on_power():
    x = np.exp(np.linspace(-10, -6, 60))
    tr = oracle.Trajectory()
    for xv in x:
        tr.append(xv, xv ** (0.7 + 0.2j), 0, "y")
    assert abs(oracle.fit_critical_exponent(tr, decades=1.5) - (0.7 + 0.2j)) < 1e-10
