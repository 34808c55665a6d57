import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from painleve6 import params
from painleve6.params import ThetaClass

cplx = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)


@given(st.tuples(cplx, cplx, cplx, cplx))
def test_coefficients_round_trip(p):
    q = params.coefficients_from_theta(params.theta_from_coefficients(*p)).as_tuple()
    for u, v in zip(q, p):
        assert abs(u - v) <= 1e-14 * max(1.0, abs(v))


@given(st.tuples(cplx, cplx, cplx, cplx), st.sampled_from([0, 1, 2, 3]))
def test_trace_invariant_under_equivalence(t, which):
    t = list(t)
    u = list(t)
    if which == 3:
        u[3] = 2 - t[3]
    else:
        u[which] = -t[which]
    a = params.trace_from_theta(t)
    b = params.trace_from_theta(u)
    for x, y in zip(a, b):
        assert abs(x - y) <= 1e-14 * max(1.0, abs(x))


@given(st.tuples(cplx, cplx, cplx, cplx))
def test_equivalent_classes_agree(t):
    th = ThetaClass(*t)
    assert th.equivalent(ThetaClass(-t[0], -t[1], -t[2], 2 - t[3]))
    assert th.equivalent(th.canonical())


def test_canonical_theta_inf_nonzero():
    # alpha = 1/2 allows theta_inf in {0, 2}; the canonical sign picks 2
    th = params.theta_from_coefficients(0.5, 0, 0, 0.5)
    assert th.thetaInf != 0


def test_to_json_layout():
    out = params.coefficients_from_theta((0, 0, 0, 4)).to_json()
    assert out["alpha"] == [4.5, 0.0]
    assert out["thetaInf"] == [4.0, 0.0]
    assert set(out) >= {"alpha", "beta", "gamma", "delta", "theta0", "thetax", "theta1", "thetaInf"}
