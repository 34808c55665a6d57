import cmath
import math

import numpy as np
import pytest

from painleve6 import poles, series, symmetry
from painleve6.errors import DegenerateRadical

c = poles._c


@pytest.fixture(scope="module")
def cp2():
    return poles.cp2_expansion(8, 40)


@pytest.fixture(scope="module")
def generic():
    return poles.reciprocal_coefficients(0.4, 0.3 + 0.2j, (0.3, 0.2, 0.4, 1.7), 8, 40)


def _refined(rec, k, j):
    return c(poles.refine_pole(rec, k, j)[0])


def test_refined_poles_decay_geometrically(cp2):
    nu = c(cp2.nu).real
    q = math.exp(-math.pi / nu)
    for j in (1, 2):
        xs = [_refined(cp2, k, j) for k in range(3)]
        for a, b in zip(xs, xs[1:]):
            assert abs(abs(b / a) / q - 1) < 10 * abs(a)


def test_predicted_poles_converge_with_order(cp2):
    for k, j in ((0, 1), (1, 2)):
        xi = poles.refine_pole(cp2, k, j)[0]
        errs = [float(abs(xi - poles.predicted_pole(cp2, k, j, N))) for N in (1, 2, 3, 4)]
        assert errs == sorted(errs, reverse=True)


@pytest.mark.parametrize("which", ["cp2", "generic"])
def test_no_zero_in_the_strip(which, request):
    rec = request.getfixturevalue(which)
    nu, phi = c(rec.nu).real, c(rec.phi)
    edge = (-phi.imag + math.log(poles.radius_upper_bound(rec))) / (2 * nu)
    vals = [abs(c(rec.value_log(complex(L, arg))))
            for L in np.linspace(-12, -4, 25) for arg in np.linspace(edge - 3, edge - 0.2, 25)]
    assert min(vals) > 0.05


def test_poles_lie_on_the_complementary_side(cp2):
    nu, phi = c(cp2.nu).real, c(cp2.phi)
    bound = -phi.imag + math.log(poles.radius_upper_bound(cp2))
    for k in range(3):
        for j in (1, 2):
            xi = _refined(cp2, k, j)
            assert 2 * nu * cmath.phase(xi) - bound >= -10 * abs(xi)


def test_swapped_power_branch_vanishes_at_poles(cp2):
    nu, phi = c(cp2.nu).real, c(cp2.phi)
    th2 = symmetry.apply_to_theta("swapxy", cp2.theta)
    A = series.sin_form_from_cosh_form(-2j * nu, 1.0, th2)[0]
    a2 = series.cosh_form_from_sin_form(-A, phi)
    b = series.expand_branch("PowerGeneric", {"sigma": -2j * nu, "a": a2}, th2, 8)
    for k, j in ((0, 1), (0, 2), (1, 1)):
        xi = _refined(cp2, k, j)
        # x/y of the swapped equation vanishes where y has a pole
        assert abs(series.evaluate_value(b, xi)) < 1e-10 * abs(xi)


def test_coefficients_independent_of_phi():
    a = poles.reciprocal_coefficients(0.4, 0.3, (0.3, 0.2, 0.4, 1.7), 5, 30).coefficients()
    b = poles.reciprocal_coefficients(0.4, 1.1 - 0.4j, (0.3, 0.2, 0.4, 1.7), 5, 30).coefficients()
    assert a.keys() == b.keys() and all(abs(a[k] - b[k]) == 0 for k in a)


def test_delta_closed_forms(cp2):
    nu = c(cp2.nu).real
    closed = poles.cp2_delta_closed_forms(nu)
    for j in (1, 2):
        d = poles.pole_corrections(cp2, j, 4)
        for N in (3, 4):
            assert abs(c(d[N]) - closed[(N, j)]) < 1e-12


def test_degenerate_radical():
    # A10 = 0 and A1,-1 = 0 cannot both be arranged generically; force it on a copy
    rec = poles.reciprocal_coefficients(0.4, 0.3, (0.3, 0.2, 0.4, 1.7), 3, 30)
    A11, A10, A1m = rec.level1()
    coeffs = dict(rec.branch.coefficients)
    coeffs[(0, 0, 0)] = 2 * A11 * 0
    coeffs[(0, -1, 0)] = A11 * 0
    fake = poles.ReciprocalExpansion(rec.nu, rec.phi, rec.theta, rec.order, rec.digits,
                                     rec.branch.__class__(**{**rec.branch.__dict__, "coefficients": coeffs}))
    with pytest.raises(DegenerateRadical):
        poles.zero_roots(fake)
