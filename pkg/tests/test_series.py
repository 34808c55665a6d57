import cmath
import json
import warnings

import numpy as np
import pytest
import sympy as sp

from painleve6 import oracle, params, series
from painleve6.errors import ConditionViolation

TH = (0.3, 0.2, 0.4, 1.7)
x, y, Y1, Y2 = sp.symbols("x y Y1 Y2")
t0, tx, t1, ti = sp.symbols("t0 tx t1 ti")


@pytest.fixture(scope="module")
def cleared():
    """2 x^2 (x-1)^2 y (y-1) (y-x) (y'' - RHS) with Y1 = x y', Y2 = x (x y')'."""
    al, be, ga, de = (ti - 1) ** 2 / 2, -t0 ** 2 / 2, t1 ** 2 / 2, sp.Rational(1, 2) - tx ** 2 / 2
    yp, ypp = Y1 / x, (Y2 - Y1) / x ** 2
    rhs = (sp.Rational(1, 2) * (1 / y + 1 / (y - 1) + 1 / (y - x)) * yp ** 2
           - (1 / x + 1 / (x - 1) + 1 / (y - x)) * yp
           + y * (y - 1) * (y - x) / (x ** 2 * (x - 1) ** 2)
           * (al + be * x / y ** 2 + ga * (x - 1) / (y - 1) ** 2 + de * x * (x - 1) / (y - x) ** 2))
    return sp.expand(sp.cancel(2 * x ** 2 * (x - 1) ** 2 * y * (y - 1) * (y - x) * (ypp - rhs)))


def _num(theta):
    return dict(zip((t0, tx, t1, ti), (sp.nsimplify(v) for v in theta)))


def test_residual_form_matches_sympy(cleared):
    P = sp.Poly(cleared.subs(_num(TH)), x, y, Y1, Y2)
    want = {m: complex(c) for m, c in zip(P.monoms(), P.coeffs())}
    got = series.residual_form(TH).poly.terms
    assert set(got) == set(want)
    assert max(abs(got[k] - want[k]) for k in got) < 1e-14


def test_identity_residual_vanishes_iff_theta_x_zero(cleared):
    r = sp.factor(cleared.subs({y: x, Y1: x, Y2: x}))
    assert sp.simplify(r - tx ** 2 * x ** 3 * (x - 1) ** 3) == 0
    form = lambda th: series.residual_form(th).pointwise(0.1, 0.1, 0.1, 0.1)
    assert abs(form((0.3, 0, 0.4, 1.7))) < 1e-17
    assert abs(form(TH) - 0.04 * 0.1 ** 3 * (0.1 - 1) ** 3) < 1e-15


def test_taylor_residual_order_is_five(cleared):
    th = (0, 0, sp.Rational(2, 5), sp.Rational(17, 10))
    c2 = sp.Symbol("c2")
    Y = 2 * x + c2 * x ** 2
    R = cleared.subs(_num(th)).subs({y: Y, Y1: x * sp.diff(Y, x), Y2: x * sp.diff(x * sp.diff(Y, x), x)})
    P = sp.Poly(sp.expand(R), x)
    low = min(m[0] for m in P.monoms())
    sol = sp.solve(P.coeff_monomial(x ** low), c2)[0]
    Q = sp.Poly(sp.expand(R.subs(c2, sol)), x)
    order = min(m[0] for m, c in zip(Q.monoms(), Q.coeffs()) if c != 0)
    b = series.expand_branch("TaylorRow3", {"a": 2}, (0, 0, 0.4, 1.7), 2)
    assert abs(b.coefficients[(2, 0, 0)] - complex(sol)) < 1e-14
    assert order == 5 == series.formal_residual_order(b)


def test_power_leading_level_from_sympy(cleared):
    s, a, B, c, sig = sp.symbols("s a B c sigma")
    Y = x * (a / s + B + c * s)
    D = lambda e: x * sp.diff(e, x) + sig * s * sp.diff(e, s)
    R = sp.expand(cleared.subs(_num(TH)).subs({y: Y, Y1: D(Y), Y2: D(D(Y))}))
    low = min(m[0] for m in sp.Poly(R, x).monoms())
    lead = sp.Poly(sp.expand(sp.Poly(R, x).coeff_monomial(x ** low) * s ** 4), s)
    vals = {sig: sp.Rational(3, 10), a: 1}
    sol = sp.solve([e.subs(vals) for e in lead.coeffs()], [B, c], dict=True)
    b = series.expand_branch("PowerGeneric", {"sigma": 0.3, "a": 1}, TH, 2)
    got = (b.coefficients[(1, 0, 0)], b.coefficients[(1, 1, 0)])
    assert any(abs(got[0] - complex(d[B])) < 1e-14 and abs(got[1] - complex(d[c])) < 1e-14 for d in sol)


@pytest.mark.parametrize("tag,consts,th", [
    ("PowerGeneric", {"sigma": 0.3 + 0.1j, "a": 0.8}, TH),
    ("TaylorRow3", {"a": 2}, (0, 0, 0.4, 1.7)),
    ("InvOscNuPhi", {"nu": 0.35, "phi": 0.4 + 0.1j}, TH),
])
def test_truncation_error_estimate(tag, consts, th):
    x0 = 0.02 + 0.01j
    e = series.evaluate(series.expand_branch(tag, consts, th, 8), x0)
    f = series.evaluate(series.expand_branch(tag, consts, th, 10), x0)
    assert abs(e.value - f.value) < e.error


def test_sin_and_cosh_forms_agree():
    nu = 0.35
    a = 0.8 + 0.1j
    b = series.expand_branch("PowerGeneric", {"sigma": 2j * nu, "a": a}, TH, 6)
    A, phi, B = series.sin_form_from_cosh_form(2j * nu, a, TH)
    assert abs(series.cosh_form_from_sin_form(A, phi) - a) < 1e-15
    for L, arg in ((-25, 0.0), (-27, 0.4), (-30, -0.3)):
        v = series.evaluate_value(b, (L, arg))
        w = series.sin_form_value(2j * nu, A, phi, B, (L, arg))
        assert abs(v - w) < 1e-10 * abs(w)


def _oracle_check(tag, consts, th, x0, x1):
    b = series.expand_branch(tag, consts, th, 12)
    y0, dy0 = series.series_with_derivative(b, x0)
    tr = oracle.integrate(params.coefficients_from_theta(th), x0, y0, dy0, [x1], tol=1e-12)
    want = series.evaluate_value(b, x1)
    return abs(tr.final()[1] - want) / abs(want)


@pytest.mark.parametrize("tag,consts,th", [
    ("PowerGeneric", {"sigma": 0.3, "a": 1}, (0, 0.3, 0.7, 1.4)),
    ("TaylorRow3", {"a": 2}, (0, 0, 0, 1)),
])
def test_series_agrees_with_oracle(tag, consts, th):
    assert _oracle_check(tag, consts, th, 1e-3, 3e-3 + 1e-3j) < 1e-7


def test_json_round_trip():
    b = series.expand_branch("PowerGeneric", {"sigma": 0.3 + 0.1j, "a": 0.8}, TH, 4)
    c = series.BranchExpansion.from_json(json.loads(json.dumps(b.to_json())))
    assert c.coefficients.keys() == b.coefficients.keys()
    assert abs(series.evaluate_value(c, 0.01) - series.evaluate_value(b, 0.01)) < 1e-15


def test_resolve_tag():
    assert series.resolve_tag("taylor6") == "TaylorRow3"
    assert series.resolve_tag("powergeneric") == "PowerGeneric"
    with pytest.raises(ConditionViolation):
        series.resolve_tag("Nope")


def test_taylor_row2_needs_vanishing_obstruction():
    with pytest.raises(ConditionViolation):
        series.expand_branch("TaylorRow2", {"a": 0.5, "k": 0}, (1.3, 0.3, 0.4, 1.7), 4)


def test_log_classes_warn():
    b = series.expand_branch("LogRow2", {"a": 0.3}, (0.45, 0.2, 0.3, 1.6), 3)
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        series.evaluate(b, 1e-3)
    assert any("asymptotic" in str(m.message) for m in w)
