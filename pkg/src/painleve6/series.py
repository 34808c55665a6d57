"""Critical expansions at x = 0 for every behaviour class, and their evaluation.

Each class is an ansatz on the lattice x**(n + m*lam) (ln x)**l: a few
leading coefficients fixed by the table of behaviours, and a range of
unknown positions per level solved by substitution into the cleared
equation (see :mod:`painleve6.recursion`).  Inverse classes expand the
reciprocal w = 1/y and use the w-chart polynomial.

Expansions at x = 1 and x = infinity are not computed here; they come from
:func:`painleve6.symmetry.transport_expansion`.  A BranchExpansion therefore
carries a small "frame": y = offset + scale * t**power * U(t)**(+/-1), where
U is the lattice series and t the local variable (x, 1 - x or 1/x).
"""
from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .covering import CoveringPoint
from .errors import (AsymptoticOnlyWarning, ConditionViolation, DenominatorNearZero,
                     OutsideDomainWarning, ResonanceError)
from .lattice import Backend, LatticeSeries, precision
from .monodromy import a_squared
from .params import ThetaClass
from .recursion import Ansatz, solve_ansatz
from .residual import PviResidualForm, substitute

CLASS_TAGS = (
    "PowerGeneric", "PowerRho", "PowerNegOmega",
    "InvOscNuPhi", "InvOscA",
    "TaylorRow1", "TaylorRow2", "TaylorRow3", "TaylorRow4", "TaylorRow5", "TaylorRow6",
    "LogRow1", "LogRow2", "LogRow3",
    "InvLogRow1", "InvLogRow2",
)
LOG_CLASSES = {"LogRow1", "LogRow2", "LogRow3", "InvLogRow1", "InvLogRow2"}
# the Taylor branch of the explicit connection example goes by this name on the CLI
ALIASES = {"taylor6": "TaylorRow3"}

INT_TOL = 1e-9
DEFAULT_RADIUS = 0.5


def resolve_tag(tag: str) -> str:
    if tag in CLASS_TAGS:
        return tag
    low = tag.lower()
    if low in ALIASES:
        return ALIASES[low]
    for t in CLASS_TAGS:
        if t.lower() == low:
            return t
    raise ConditionViolation(f"unknown behaviour class {tag!r}", known=list(CLASS_TAGS))


def _near_int(z, tol=INT_TOL):
    z = complex(z)
    n = round(z.real)
    return int(n) if abs(z - n) < tol else None


def leading_AB(sigma, theta0, thetax, bk: Backend | None = None):
    """Sine amplitude A and shift B of the Re sigma = 0 leading bracket.

    y = x {A sin(i sigma ln x + phi) + B} + O(x^2); the product of the
    x^(1-sigma) and x^(1+sigma) coefficients equals A^2/4.
    """
    bk = bk or Backend()
    s2 = bk.num(sigma) ** 2
    t0, tx = bk.num(theta0), bk.num(thetax)
    A2 = (s2 - (t0 - tx) ** 2) * (s2 - (t0 + tx) ** 2) / (4 * s2 * s2)
    B = (t0 * t0 - tx * tx + s2) / (2 * s2)
    return bk.sqrt(A2), B


def sin_form_from_cosh_form(sigma, a, theta):
    """(A, phi, B) with a = (A / 2i) e^{i phi}, for the Re sigma = 0 branch."""
    th = ThetaClass.of(theta)
    A, B = leading_AB(sigma, th.theta0, th.thetax)
    A, B = complex(A), complex(B)
    phi = -1j * cmath.log(2j * complex(a) / A)
    return A, phi, B


def cosh_form_from_sin_form(A, phi):
    return complex(A) / 2j * cmath.exp(1j * complex(phi))


def sin_form_value(sigma, A, phi, B, x) -> complex:
    """Leading bracket x {A sin(i sigma ln x + phi) + B} at a covering point."""
    L = CoveringPoint.of(x).log
    return cmath.exp(L) * (A * cmath.sin(1j * sigma * L + phi) + B)


# ---------------------------------------------------------------------------
# class plans


@dataclass
class Plan:
    chart: str
    lam: object
    lead: int
    seeds: dict
    unknowns: object
    free: dict = field(default_factory=dict)
    constants: dict = field(default_factory=dict)
    obstruction_level: int | None = None  # Taylor rows that need a vanishing log term


def _const(consts, name, default=None, required=True):
    if name in consts:
        return consts[name]
    if default is not None or not required:
        return default
    raise ConditionViolation(f"missing integration constant {name!r}")


def _sign(consts, name="sign"):
    s = consts.get(name, 1)
    s = int(round(complex(s).real))
    if s not in (1, -1):
        raise ConditionViolation(f"{name} must be +1 or -1", value=s)
    return s


def _k(consts):
    k = int(round(complex(consts.get("k", 0)).real))
    if k not in (0, 1):
        raise ConditionViolation("k must be 0 or 1", value=k)
    return k


def _log_unknowns(start: int):
    def unknowns(n):
        return [(0, l) for l in range(2 * n + 4)] if n >= start else [(0, 0)]
    return unknowns


def _taylor_unknowns(n):
    return [(0, 0)]


def _plan(tag: str, consts: dict, th, co, bk: Backend) -> Plan:
    t0, tx, t1, ti = th
    al, be, ga, de = co
    sa = ti - 1  # sqrt(2 alpha)
    one = bk.num(1)

    if tag == "PowerGeneric":
        sigma = bk.num(_const(consts, "sigma"))
        a = bk.num(_const(consts, "a"))
        s = complex(sigma)
        if not (0 <= s.real < 1) or s == 0:
            raise ConditionViolation("PowerGeneric needs 0 <= Re sigma < 1, sigma != 0", sigma=s)
        if complex(a) == 0:
            raise ConditionViolation("a must be nonzero")
        s2 = sigma * sigma
        A2lit = (s2 - (t0 - tx) ** 2) * (s2 - (t0 + tx) ** 2) / (4 * s2)
        B = (t0 * t0 - tx * tx + s2) / (2 * s2)
        seeds = {(1, -1, 0): a, (1, 0, 0): B, (1, 1, 0): A2lit / (4 * s2 * a)}
        return Plan("y", sigma, 1, seeds, lambda n: [(m, 0) for m in range(-n, n + 1)],
                    constants={"sigma": sigma, "a": a})

    if tag in ("PowerRho", "TaylorRow4", "TaylorRow5", "LogRow3"):
        if abs(complex(sa)) < INT_TOL:
            raise ConditionViolation(f"{tag} needs alpha != 0")
        k = _k(consts)
        N = sa + (-1) ** k * t1
        b0 = N / sa
        Nint = _near_int(N)
        if tag == "PowerRho":
            rho = N - 1 if complex(N).real > 0 or (complex(N).real == 0 and complex(N).imag >= 0) else -N - 1
            if _near_int(rho) is not None:
                raise ConditionViolation("PowerRho needs rho not an integer (p0x != +/-2)", rho=complex(rho))
            if "rho" in consts and abs(complex(consts["rho"]) - complex(rho)) > 1e-8:
                raise ConditionViolation("rho does not match the theta (and k) given", rho=complex(rho),
                                         given=complex(consts["rho"]))
            a = bk.num(_const(consts, "a"))
            return Plan("y", rho, 0, {(0, 0, 0): b0}, lambda n: [(m, 0) for m in range(0, n + 1)],
                        free={(1, 1, 0): a}, constants={"a": a, "k": k, "rho": rho})
        if tag == "TaylorRow4":
            if Nint is not None:
                raise ConditionViolation("TaylorRow4 needs sqrt(2 alpha) + (-1)^k sqrt(2 gamma) not an integer",
                                         N=complex(N))
            return Plan("y", None, 0, {(0, 0, 0): b0}, _taylor_unknowns, constants={"k": k})
        if Nint is None or Nint == 0:
            raise ConditionViolation(f"{tag} needs sqrt(2 alpha) + (-1)^k sqrt(2 gamma) = N, a nonzero integer",
                                     N=complex(N))
        res = abs(Nint)
        a = bk.num(_const(consts, "a"))
        if tag == "TaylorRow5":
            return Plan("y", None, 0, {(0, 0, 0): b0}, _taylor_unknowns, free={(res, 0, 0): a},
                        constants={"a": a, "k": k, "N": Nint}, obstruction_level=res)
        return Plan("y", None, 0, {(0, 0, 0): b0}, _log_unknowns(res), free={(res, 0, 0): a},
                    constants={"a": a, "k": k, "N": Nint})

    if tag == "PowerNegOmega":
        if abs(complex(sa)) > INT_TOL:
            raise ConditionViolation("PowerNegOmega needs alpha = 0", alpha=complex(al))
        om = t1
        if complex(om).real <= 0:
            raise ConditionViolation("PowerNegOmega needs Re omega > 0", omega=complex(om))
        a = bk.num(_const(consts, "a"))
        return Plan("y", om, 0, {(0, -1, 0): one / a}, lambda n: [(m, 0) for m in range(-1, n)],
                    constants={"a": a, "omega": om})

    if tag == "InvOscNuPhi":
        nu = bk.num(_const(consts, "nu"))
        phi = bk.num(_const(consts, "phi"))
        if abs(complex(nu).imag) > 1e-12 or complex(nu) == 0:
            raise ConditionViolation("nu must be real and nonzero", nu=complex(nu))
        nu2 = nu * nu
        B = (2 * nu2 + ga - al) / (4 * nu2)
        A = -bk.sqrt(al / (2 * nu2) + B * B)
        e = bk.exp(bk.num(1j) * phi)
        seeds = {(0, 0, 0): B, (0, 1, 0): A / bk.num(2j) * e, (0, -1, 0): -A / bk.num(2j) / e}
        return Plan("w", bk.num(2j) * nu, 0, seeds, lambda n: [(m, 0) for m in range(-n - 1, n + 2)],
                    constants={"nu": nu, "phi": phi, "A": A, "B": B})

    if tag == "InvOscA":
        nu = bk.num(_const(consts, "nu"))
        a = bk.num(_const(consts, "a"))
        if abs(complex(nu).imag) > 1e-12 or complex(nu) == 0:
            raise ConditionViolation("nu must be real and nonzero", nu=complex(nu))
        lam2 = bk.num(2j) * nu
        if min(abs(complex(lam2 - (s1 * sa + s2 * t1))) for s1 in (1, -1) for s2 in (1, -1)) > 1e-8:
            raise ConditionViolation("InvOscA needs 2 i nu = +/-(sqrt(2 alpha) +/- sqrt(2 gamma))",
                                     nu=complex(nu))
        nu2 = nu * nu
        B = (2 * nu2 + ga - al) / (4 * nu2)
        return Plan("w", -lam2, 0, {(0, 0, 0): B, (0, 1, 0): a}, lambda n: [(m, 0) for m in range(0, n + 2)],
                    constants={"nu": nu, "a": a, "B": B})

    if tag in ("TaylorRow1", "TaylorRow2", "LogRow1"):
        k = _k(consts)
        N = t0 + (-1) ** k * tx
        Nint = _near_int(N)
        if tag == "TaylorRow1":
            if Nint is not None:
                raise ConditionViolation("TaylorRow1 needs sqrt(-2 beta) + (-1)^k sqrt(1 - 2 delta) not an integer",
                                         N=complex(N))
            return Plan("y", None, 1, {(1, 0, 0): t0 / N}, _taylor_unknowns, constants={"k": k})
        if Nint is None:
            raise ConditionViolation(f"{tag} needs sqrt(-2 beta) + (-1)^k sqrt(1 - 2 delta) = N integer",
                                     N=complex(N))
        a = bk.num(_const(consts, "a"))
        if Nint == 0:
            if tag == "TaylorRow2":
                raise ConditionViolation("TaylorRow2 needs N != 0")
            s = _sign(consts)
            return Plan("y", None, 1, {(1, 0, 0): a, (1, 0, 1): s * t0}, _log_unknowns(1),
                        constants={"a": a, "k": k, "N": 0, "sign": s})
        res = abs(Nint) + 1
        if tag == "TaylorRow2":
            return Plan("y", None, 1, {(1, 0, 0): t0 / N}, _taylor_unknowns, free={(res, 0, 0): a},
                        constants={"a": a, "k": k, "N": Nint}, obstruction_level=res)
        return Plan("y", None, 1, {(1, 0, 0): t0 / N}, _log_unknowns(res), free={(res, 0, 0): a},
                    constants={"a": a, "k": k, "N": Nint})

    if tag == "TaylorRow3":
        if abs(complex(t0)) > INT_TOL or abs(complex(tx)) > INT_TOL:
            raise ConditionViolation("TaylorRow3 needs 2 beta = 2 delta - 1 = 0")
        a = bk.num(_const(consts, "a"))
        return Plan("y", None, 1, {(1, 0, 0): a}, _taylor_unknowns, constants={"a": a})

    if tag == "TaylorRow6":
        if abs(complex(al)) > INT_TOL or abs(complex(ga)) > INT_TOL:
            raise ConditionViolation("TaylorRow6 needs alpha = gamma = 0")
        a = bk.num(_const(consts, "a"))
        return Plan("y", None, 0, {(0, 0, 0): a}, _taylor_unknowns, constants={"a": a})

    if tag == "LogRow2":
        d = t0 * t0 - tx * tx
        if abs(complex(d)) < INT_TOL:
            raise ConditionViolation("LogRow2 needs theta_0^2 != theta_x^2")
        a = bk.num(_const(consts, "a"))
        c = -d / 4
        seeds = {(1, 0, 0): c * a * a + t0 * t0 / d, (1, 0, 1): 2 * c * a, (1, 0, 2): c}
        return Plan("y", None, 1, seeds, _log_unknowns(1), constants={"a": a})

    if tag == "InvLogRow1":
        if abs(complex(al - ga)) > INT_TOL or abs(complex(al)) < INT_TOL:
            raise ConditionViolation("InvLogRow1 needs alpha = gamma != 0")
        a = bk.num(_const(consts, "a"))
        s = _sign(consts)
        return Plan("w", None, 0, {(0, 0, 0): a, (0, 0, 1): s * sa}, _log_unknowns(0),
                    constants={"a": a, "sign": s})

    if tag == "InvLogRow2":
        if abs(complex(al - ga)) < INT_TOL:
            raise ConditionViolation("InvLogRow2 needs alpha != gamma")
        a = bk.num(_const(consts, "a"))
        h = (ga - al) / 2
        seeds = {(0, 0, 0): al / (al - ga) + h * a * a, (0, 0, 1): 2 * h * a, (0, 0, 2): h}
        return Plan("w", None, 0, seeds, _log_unknowns(0), constants={"a": a})

    raise ConditionViolation(f"unknown behaviour class {tag!r}")


# ---------------------------------------------------------------------------
# expansion objects


@dataclass
class BranchExpansion:
    classTag: str
    constants: dict
    theta: ThetaClass
    order: int
    chart: str
    lam: object
    coefficients: dict  # (n, m, l) -> coefficient of x^(n + m lam) (ln x)^l in U
    shift: int = 0  # level offset of the recursion equations
    criticalPoint: str = "0"
    offset: complex = 0j
    scale: complex = 1 + 0j
    power: int = 0
    inverse: bool = False
    digits: int | None = None
    residualOrder: float | None = None

    @property
    def variable(self) -> str:
        return {"0": "x", "1": "1-x", "inf": "1/x"}[self.criticalPoint]

    @property
    def backend(self) -> Backend:
        return Backend(self.digits)

    def series(self, cap: int | None = None) -> LatticeSeries:
        cap = self.max_level() if cap is None else cap
        return LatticeSeries.from_dict(self.coefficients, self.lam, cap, self.backend)

    def max_level(self) -> int:
        return max(k[0] for k in self.coefficients)

    def min_level(self) -> int:
        return min(k[0] for k in self.coefficients)

    def level_table(self) -> dict:
        out: dict = {}
        for (n, m, l), c in sorted(self.coefficients.items()):
            out.setdefault(n, {})[(m, l)] = c
        return out

    def to_json(self) -> dict:
        def cj(z):
            z = complex(z) if not hasattr(z, "real") or isinstance(z, complex) else complex(float(z.real), float(z.imag))
            return [z.real, z.imag]

        consts = {}
        for k, v in self.constants.items():
            consts[k] = v if isinstance(v, int) else cj(v)
        return {
            "classTag": self.classTag,
            "criticalPoint": self.criticalPoint,
            "variable": self.variable,
            "constants": consts,
            "theta": [cj(v) for v in self.theta.as_tuple()],
            "order": self.order,
            "chart": self.chart,
            "lambda": None if self.lam is None else cj(self.lam),
            "frame": {"offset": cj(self.offset), "scale": cj(self.scale), "power": self.power,
                      "inverse": self.inverse},
            "shift": self.shift,
            "residualOrder": self.residualOrder,
            "coefficients": {f"{n},{m},{l}": cj(c) for (n, m, l), c in sorted(self.coefficients.items())},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "BranchExpansion":
        def jc(v):
            return complex(v[0], v[1])

        consts = {k: (v if isinstance(v, int) else jc(v)) for k, v in obj["constants"].items()}
        coeffs = {}
        for key, v in obj["coefficients"].items():
            n, m, l = (int(s) for s in key.split(","))
            coeffs[(n, m, l)] = jc(v)
        fr = obj.get("frame", {})
        return cls(
            classTag=obj["classTag"], constants=consts, theta=ThetaClass(*[jc(v) for v in obj["theta"]]),
            order=int(obj["order"]), chart=obj["chart"], lam=None if obj["lambda"] is None else jc(obj["lambda"]),
            coefficients=coeffs, shift=int(obj.get("shift", 0)), criticalPoint=obj.get("criticalPoint", "0"),
            offset=jc(fr.get("offset", [0, 0])), scale=jc(fr.get("scale", [1, 0])), power=int(fr.get("power", 0)),
            inverse=bool(fr.get("inverse", obj["chart"] == "w")), residualOrder=obj.get("residualOrder"),
        )


def _theta_backend(theta: ThetaClass, bk: Backend):
    th = tuple(bk.num(v) for v in theta.as_tuple())
    t0, tx, t1, ti = th
    co = ((ti - 1) ** 2 / 2, -(t0 * t0) / 2, t1 * t1 / 2, bk.num(0.5) - tx * tx / 2)
    return th, co


def residual_form(theta, chart: str = "y", digits: int | None = None) -> PviResidualForm:
    bk = Backend(digits)
    with precision(digits):
        _, co = _theta_backend(ThetaClass.of(theta), bk)
        return PviResidualForm(*co, chart=chart)


def expand_branch(tag: str, constants: dict, theta, order: int, digits: int | None = None,
                  residual_order: bool = False) -> BranchExpansion:
    """Coefficients of the class ``tag`` through level ``order``.

    ``digits`` switches to extended precision.  With ``residual_order`` the
    lowest uncancelled exponent of the formal residual is also recorded.
    """
    tag = resolve_tag(tag)
    theta = ThetaClass.of(theta)
    bk = Backend(digits)
    with precision(digits):
        th, co = _theta_backend(theta, bk)
        plan = _plan(tag, dict(constants), th, co, bk)
        form = PviResidualForm(*co, chart=plan.chart)
        ans = Ansatz(plan.chart, plan.lam, plan.lead, plan.seeds, plan.unknowns, plan.free)
        try:
            sol = solve_ansatz(form, ans, order, bk)
        except ResonanceError as exc:
            lvl = exc.details.get("level")
            if plan.obstruction_level is not None and lvl == plan.obstruction_level:
                raise ConditionViolation(
                    f"{tag}: the logarithmic term at level {lvl} does not vanish for these parameters; "
                    "the logarithmic class applies", level=lvl) from exc
            raise
        coeffs = {k: v for k, v in sol.coefficients.items() if k[0] <= order}
        b = BranchExpansion(tag, plan.constants, theta, order, plan.chart, plan.lam, coeffs,
                            shift=sol.shift, inverse=plan.chart == "w", digits=digits)
        if residual_order:
            b.residualOrder = formal_residual_order(b, form)
    return b


def obstruction(tag: str, constants: dict, theta, digits: int | None = None) -> complex:
    """Coefficient of the logarithm at the resonant level of a log row.

    TaylorRow2 (TaylorRow5) exists exactly when this vanishes for LogRow1 (LogRow3).
    """
    tag = resolve_tag(tag)
    bk = Backend(digits)
    with precision(digits):
        th, co = _theta_backend(ThetaClass.of(theta), bk)
        plan = _plan(tag, dict(constants, a=constants.get("a", 0)), th, co, bk)
    if not plan.free:
        raise ConditionViolation(f"{tag} has no resonant level for these parameters")
    lvl = next(iter(plan.free))[0]
    b = expand_branch(tag, dict(constants, a=constants.get("a", 0)), theta, lvl, digits)
    return b.coefficients.get((lvl, 0, 1), 0j)


# ---------------------------------------------------------------------------
# residuals


def formal_residual_order(b: BranchExpansion, form: PviResidualForm | None = None, extra: int = 3) -> float:
    """Lowest Re exponent among the uncancelled terms of the formal residual.

    Only meaningful for untransported expansions (frame at x = 0).
    """
    bk = b.backend
    with precision(b.digits):
        form = form or residual_form(b.theta, b.chart, b.digits)
        first = b.shift + b.order + 1
        R = substitute(form.poly, b.series(b.order + extra).with_cap(first + extra))
        lam = 0j if b.lam is None else complex(bk.to_complex(bk.num(b.lam)))
        scale = max((bk.abs(c) for _, c in R.items()), default=1.0)
        tol = 1e-9 * scale if not bk.extended else scale * 10.0 ** (-(b.digits // 2))
        best = math.inf
        for (n, m, l), c in R.items():
            if n >= first and bk.abs(c) > tol:
                best = min(best, n + (m * lam).real)
        return best


def pointwise_residual(b: BranchExpansion, x, form: PviResidualForm | None = None):
    """R(x, u, Du, D^2 u) in the expansion's own chart at a covering point."""
    bk = b.backend
    with precision(b.digits):
        form = form or residual_form(b.theta, b.chart, b.digits)
        L = _log_of(x, bk)
        u, du, d2u = b.series().evaluate(L, derivatives=2)
        return form.pointwise(bk.exp(L), u, du, d2u)


def _log_of(x, bk: Backend):
    if isinstance(x, (tuple, list, CoveringPoint)):
        cp = CoveringPoint.of(x)
        return bk.num(complex(cp.log_abs, cp.arg))
    if bk.extended and not isinstance(x, (int, float, complex)):
        return bk.log(bk.num(x))
    return bk.num(CoveringPoint.of(x).log)


def measured_residual_slope(b: BranchExpansion, log_abs: tuple, arg: float = 0.0) -> float:
    """Slope of ln|R| against ln|x| between two radii on the ray arg x = arg."""
    vals = []
    for la in log_abs:
        r = pointwise_residual(b, (la, arg))
        vals.append(math.log(max(float(abs(r)), 1e-4000)) if not b.backend.extended else _mp_log_abs(r))
    return (vals[1] - vals[0]) / (log_abs[1] - log_abs[0])


def _mp_log_abs(z) -> float:
    import gmpy2
    a = abs(z)
    if a == 0:
        return -math.inf
    return float(gmpy2.log(a))


# ---------------------------------------------------------------------------
# evaluation


@dataclass
class Evaluation:
    value: complex
    error: float
    denominator: complex | None = None


def _local_log(b: BranchExpansion, x, bk: Backend):
    """ln t for the expansion's local variable t at the point x."""
    if b.criticalPoint == "0":
        return _log_of(x, bk)
    if isinstance(x, (tuple, list, CoveringPoint)):
        if b.criticalPoint == "inf":
            cp = CoveringPoint.of(x)
            return bk.num(complex(-cp.log_abs, -cp.arg))
        x = CoveringPoint.of(x).value
    z = complex(x)
    if b.criticalPoint == "1":
        return bk.num(cmath.log(1 - z))
    return bk.num(-cmath.log(z))


def evaluate(b: BranchExpansion, x, radius: float = DEFAULT_RADIUS, pole_tol: float = 1e-10) -> Evaluation:
    """Sum the truncated expansion at x (complex or covering point (ln|x|, arg x)).

    The error estimate is the size of the highest retained level.  Inverse
    frames raise DenominatorNearZero close to a zero of the summed series,
    i.e. close to a pole of y.
    """
    bk = b.backend
    with precision(b.digits):
        Lt = _local_log(b, x, bk)
        t_abs = math.exp(complex(bk.to_complex(Lt)).real)
        if t_abs > radius:
            warnings.warn(f"|t| = {t_abs:.3g} exceeds the heuristic radius {radius}", OutsideDomainWarning,
                          stacklevel=2)
        if b.classTag in LOG_CLASSES:
            warnings.warn("logarithmic expansions are formal; the value is asymptotic only",
                          AsymptoticOnlyWarning, stacklevel=2)
        S = b.series()
        U = S.evaluate(Lt)
        top = b.max_level()
        last = LatticeSeries.from_dict({k: v for k, v in b.coefficients.items() if k[0] == top}, b.lam, top, bk)
        dU = bk.abs(last.evaluate(Lt))
        tk = bk.exp(b.power * Lt) if b.power else bk.num(1)
        if b.inverse:
            ref = max((bk.abs(c) for k, c in b.coefficients.items() if k[0] == b.min_level()), default=1.0)
            if bk.abs(U) < pole_tol * ref:
                raise DenominatorNearZero("reciprocal series nearly vanishes: x is close to a pole",
                                          denominator=bk.to_complex(U))
            core = 1 / U
            err = dU / bk.abs(U) * bk.abs(core)
        else:
            core = U
            err = dU
        val = bk.num(b.offset) + bk.num(b.scale) * tk * core
        err = err * bk.abs(bk.num(b.scale) * tk)
        return Evaluation(bk.to_complex(val), float(err), bk.to_complex(U) if b.inverse else None)


def evaluate_value(b: BranchExpansion, x) -> complex:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        return evaluate(b, x).value


def series_with_derivative(b: BranchExpansion, x):
    """(y, dy/dx) for an untransported expansion at x = 0, y chart or w chart."""
    bk = b.backend
    with precision(b.digits):
        L = _log_of(x, bk)
        u, du = b.series().evaluate(L, derivatives=1)
        xv = bk.exp(L)
        if b.inverse:
            y = 1 / u
            dy = -du / (u * u) / xv
        else:
            y, dy = u, du / xv
        return bk.to_complex(y), bk.to_complex(dy)
