"""Direct numerical integration of PVI along complex polylines.

The independent check for every expansion.  Each straight segment
x(s) = xa + s (xb - xa), 0 <= s <= 1, is integrated with DOP853.  The working
variable u is one of y, x/y, 1/y, y - 1; when |u| leaves [1e-3, 1e3] the state
is moved to the chart whose variable is closest to 1 in size.  The x/y chart
is PVI itself with the parameters of the swapped equation, so poles of y are
crossed as zeros of x/y.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import least_squares

from .errors import FitDivergence, NonPowerLaw, SingularityOnPath, StepUnderflow
from .params import PviParameters, coefficients_from_theta
from .symmetry import SymmetryOp, apply_to_theta

CHARTS = ("y", "x/y", "1/y", "y-1")
LOW, HIGH = 1e-3, 1e3
MIN_DIST = 1e-6
HYST = 10.0


def pvi_rhs(x, y, dy, a, b, g, d):
    """y'' from PVI."""
    xm = x - 1
    ym = y - 1
    yx = y - x
    return (0.5 * (1 / y + 1 / ym + 1 / yx) * dy * dy
            - (1 / x + 1 / xm + 1 / yx) * dy
            + y * ym * yx / (x * x * xm * xm) * (a + b * x / (y * y) + g * xm / (ym * ym) + d * x * xm / (yx * yx)))


def to_chart(chart: str, x, y, dy):
    """(u, u') in the chart from (y, y')."""
    if chart == "y":
        return y, dy
    if chart == "x/y":
        return x / y, 1 / y - x * dy / (y * y)
    if chart == "1/y":
        return 1 / y, -dy / (y * y)
    if chart == "y-1":
        return y - 1, dy
    raise ValueError(chart)


def from_chart(chart: str, x, u, du):
    """(y, y') from (u, u'); infinite at a zero of a reciprocal chart."""
    with np.errstate(divide="ignore", invalid="ignore"):
        if chart == "y":
            return u, du
        if chart == "x/y":
            return x / u, 1 / u - x * du / (u * u)
        if chart == "1/y":
            return 1 / u, -du / (u * u)
        if chart == "y-1":
            return u + 1, du
    raise ValueError(chart)


class _System:
    def __init__(self, params: PviParameters):
        self.co = tuple(complex(v) for v in params.as_tuple())
        sw = coefficients_from_theta(apply_to_theta(SymmetryOp.SwapXY, params.theta))
        self.co_swap = tuple(complex(v) for v in sw.as_tuple())

    def second(self, chart, x, u, du):
        if chart == "y":
            return pvi_rhs(x, u, du, *self.co)
        if chart == "x/y":
            return pvi_rhs(x, u, du, *self.co_swap)
        if chart == "1/y":
            y, dy = 1 / u, -du / (u * u)
            return 2 * du * du / u - u * u * pvi_rhs(x, y, dy, *self.co)
        if chart == "y-1":
            return pvi_rhs(x, u + 1, du, *self.co)
        raise ValueError(chart)


@dataclass
class Trajectory:
    x: list = field(default_factory=list)
    u: list = field(default_factory=list)
    du: list = field(default_factory=list)
    chart: list = field(default_factory=list)
    switches: list = field(default_factory=list)  # (x, from_chart, to_chart)

    def append(self, x, u, du, chart):
        self.x.append(complex(x))
        self.u.append(complex(u))
        self.du.append(complex(du))
        self.chart.append(chart)

    def y(self) -> np.ndarray:
        return np.array([from_chart(c, x, u, du)[0] for x, u, du, c in zip(self.x, self.u, self.du, self.chart)])

    def dy(self) -> np.ndarray:
        return np.array([from_chart(c, x, u, du)[1] for x, u, du, c in zip(self.x, self.u, self.du, self.chart)])

    def final(self) -> tuple:
        """(x, y, y') at the end of the path."""
        y, dy = from_chart(self.chart[-1], self.x[-1], self.u[-1], self.du[-1])
        return self.x[-1], complex(y), complex(dy)

    def final_in(self, chart: str) -> tuple:
        x, y, dy = self.final()
        u, du = to_chart(chart, x, y, dy)
        return complex(u), complex(du)

    def rows(self):
        """(x, y, chart) rows for CSV output."""
        return list(zip(self.x, self.y(), self.chart))


def _y_abs(chart, x, u):
    if chart == "y":
        return abs(u)
    if chart == "x/y":
        return abs(x) / max(abs(u), 1e-300)
    if chart == "1/y":
        return 1 / max(abs(u), 1e-300)
    return abs(u + 1)


def _bounds(chart):
    """(lower, upper) on |y| inside which the chart is kept."""
    if chart == "y":
        return LOW, HIGH
    if chart in ("x/y", "1/y"):
        return HIGH / HYST, math.inf
    return 0.0, LOW * HYST


def _next_chart(chart, ya):
    if chart == "y":
        return "x/y" if ya > HIGH else "y-1"
    return "y"


def _segment_distance(a: complex, b: complex, p: complex) -> float:
    d = b - a
    t = 0.0 if d == 0 else max(0.0, min(1.0, ((p - a) * d.conjugate()).real / abs(d) ** 2))
    return abs(a + t * d - p)


def integrate(params: PviParameters, x0, y0, dy0, path, tol: float = 1e-10, chart: str | None = None,
              max_switches: int = 200) -> Trajectory:
    """Integrate from (x0, y0, y'(x0)) along the waypoints in ``path``.

    y0, dy0 are the values of the working variable of ``chart`` (default y).
    """
    sysm = _System(params)
    pts = [complex(x0)] + [complex(p) for p in path]
    for a, b in zip(pts[:-1], pts[1:]):
        for sing in (0j, 1 + 0j):
            if _segment_distance(a, b, sing) <= MIN_DIST:
                raise SingularityOnPath("path passes within 1e-6 of a fixed singularity", point=sing.real,
                                        segment=[[a.real, a.imag], [b.real, b.imag]])
    cur = chart or "y"
    u, du = complex(y0), complex(dy0)
    traj = Trajectory()
    traj.append(pts[0], u, du, cur)

    def maybe_switch(x, u, du, c, crossed=False):
        lo, hi = _bounds(c)
        ya = _y_abs(c, x, u)
        if lo <= ya <= hi and not crossed:
            return u, du, c
        new = _next_chart(c, ya)
        if len(traj.switches) >= max_switches:
            raise StepUnderflow("too many chart switches", x=complex(x))
        y, dy = from_chart(c, x, u, du)
        traj.switches.append((complex(x), c, new))
        u, du = to_chart(new, x, y, dy)
        return complex(u), complex(du), new

    for a, b in zip(pts[:-1], pts[1:]):
        h = b - a
        s0 = 0.0
        crossed = False
        while s0 < 1.0:
            u, du, cur = maybe_switch(a + s0 * h, u, du, cur, crossed)
            c = cur

            def rhs(s, z, c=c):
                x = a + s * h
                return np.array([z[1], sysm.second(c, x, z[0], z[1] / h) * h * h])

            lo_b, hi_b = _bounds(c)
            events = []
            for bound in (lo_b, hi_b):
                if 0 < bound < math.inf:
                    def ev(s, z, bound=bound, c=c):
                        return math.log(_y_abs(c, a + s * h, z[0]) + 1e-300) - math.log(bound)
                    ev.terminal = True
                    events.append(ev)
            sol = solve_ivp(rhs, (s0, 1.0), np.array([u, du * h], dtype=complex), method="DOP853",
                            rtol=tol, atol=tol * 1e-3, events=events or None)
            if sol.status == -1:
                raise StepUnderflow(f"integration failed: {sol.message}", x=complex(a + sol.t[-1] * h))
            for s, z in zip(sol.t[1:], sol.y.T[1:]):
                traj.append(a + s * h, z[0], z[1] / h, c)
            s0 = float(sol.t[-1])
            u, du = complex(sol.y[0, -1]), complex(sol.y[1, -1] / h)
            crossed = sol.status == 1
    return traj


# -- fits ---------------------------------------------------------------------


def _unwrapped_log(z: np.ndarray) -> np.ndarray:
    return np.log(np.abs(z)) + 1j * np.unwrap(np.angle(z))


def fit_critical_exponent(traj: Trajectory, decades: float = 1.0, tol: float = 1e-3) -> complex:
    """Slope of ln y against ln x over the last ``decades`` decades of |x|."""
    x = np.array(traj.x)
    y = traj.y()
    r = np.abs(x)
    mask = r <= r.min() * 10**decades
    if mask.sum() < 4:
        raise NonPowerLaw("too few samples in the last decade", samples=int(mask.sum()))
    lx = _unwrapped_log(x[mask])
    ly = _unwrapped_log(y[mask])
    M = np.column_stack([np.ones_like(lx), lx])
    coef, *_ = np.linalg.lstsq(M, ly, rcond=None)
    res = ly - M @ coef
    rms = float(np.sqrt(np.mean(np.abs(res) ** 2)))
    if rms > tol:
        raise NonPowerLaw("ln y is not linear in ln x", rms=rms)
    return complex(coef[1])


@dataclass
class OscillationFit:
    nu: float
    phi: complex
    A: complex
    B: complex
    cost: float


def fit_oscillation(x, values, nu0: float | None = None, form: str = "y/x", tol: float = 1e-3) -> OscillationFit:
    """Fit values (y/x, or 1/y with form="1/y") to A sin(2 nu ln x + phi) + B.

    ``x`` may be a Trajectory, in which case values are taken from it.
    """
    if isinstance(x, Trajectory):
        xs = np.array(x.x)
        y = x.y()
        values = y / xs if form == "y/x" else 1 / y
        x = xs
    x = np.asarray(x, dtype=complex)
    f = np.asarray(values, dtype=complex)
    L = _unwrapped_log(x)
    if nu0 is None:
        # dominant frequency of the centred data on a uniform resampling in ln|x|
        Lr = L.real
        order = np.argsort(Lr)
        grid = np.linspace(Lr.min(), Lr.max(), 2048)
        g = np.interp(grid, Lr[order], f.real[order]) + 1j * np.interp(grid, Lr[order], f.imag[order])
        g = g - g.mean()
        power = np.abs(np.fft.rfft(g.real)) + np.abs(np.fft.rfft(g.imag))
        k = int(np.argmax(power[1:])) + 1
        nu0 = math.pi * k / (grid[-1] - grid[0])
    # linear in (A e^{i phi}, A e^{-i phi}, B) for fixed nu
    def design(nu):
        e = np.exp(2j * nu * L)
        return np.column_stack([e / 2j, -1 / e / 2j, np.ones_like(e)])

    def resid(p):
        M = design(p[0])
        c, *_ = np.linalg.lstsq(M, f, rcond=None)
        r = M @ c - f
        return np.concatenate([r.real, r.imag])

    sol = least_squares(resid, [nu0], xtol=1e-15, ftol=1e-15, gtol=1e-15)
    if not sol.success:
        raise FitDivergence("oscillation fit did not converge", message=sol.message)
    nu = float(sol.x[0])
    M = design(nu)
    (cp, cm, B), *_ = np.linalg.lstsq(M, f, rcond=None)
    cost = float(np.sqrt(np.mean(np.abs(M @ np.array([cp, cm, B]) - f) ** 2)) / max(np.abs(f).max(), 1e-300))
    if cost > tol:
        raise FitDivergence("residual of the oscillation fit is too large", cost=cost)
    # cp = A e^{i phi}, cm = A e^{-i phi}
    A = cmath.sqrt(cp * cm)
    phi = -0.5j * cmath.log(cp / cm)
    if nu < 0:
        nu, phi, A = -nu, -phi, -A
    phi = complex(phi.real % math.pi, phi.imag)
    return OscillationFit(nu, phi, complex(A), complex(B), cost)
