import cmath

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from painleve6 import monodromy
from painleve6.errors import BoundaryClass, ConditionViolation, SingularA
from painleve6.monodromy import MonodromyData

cplx = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)
theta_x0 = st.tuples(st.just(0.0), st.just(0.0), cplx, cplx)


@given(st.floats(0.0, 0.95), st.floats(-3, 3))
def test_sigma_from_trace_inverts_on_strip(re, im):
    s = complex(re, im)
    assume(abs(s) > 0.05)
    got = monodromy.sigma_from_trace(2 * cmath.cos(cmath.pi * s)).sigma
    if re <= 1e-12:  # the two roots +/-sigma both lie on Re sigma = 0
        got = got if abs(got - s) < abs(got + s) else -got
    cond = 1 + abs(cmath.cos(cmath.pi * s) / cmath.sin(cmath.pi * s))
    assert abs(got - s) < 1e-12 * cond
    assert 0 <= got.real < 1


def test_sigma_from_trace_boundaries():
    with pytest.raises(BoundaryClass):
        monodromy.sigma_from_trace(2)
    with pytest.raises(BoundaryClass) as e:
        monodromy.sigma_from_trace(-3)
    assert abs(e.value.details["sigma"].real - 1) < 1e-15


def test_exponent_family_shares_trace():
    e = monodromy.ExponentSigma(0.3 + 0.2j)
    p = e.trace()
    for N in range(-3, 4):
        for sign in (1, -1):
            assert abs(2 * cmath.cos(cmath.pi * e.family(N, sign)) - p) < 1e-12


@given(theta_x0, cplx)
def test_taylor_traces_on_cubic(theta, a):
    d = MonodromyData.from_theta(theta, *np.array(monodromy.taylor_branch_traces(theta, a))[[0, 2, 1]])
    scale = 1 + max(abs(v) for v in d.as_tuple()) ** 3
    assert abs(d.residual()) < 1e-12 * scale


def test_taylor_traces_need_theta_zero():
    with pytest.raises(ConditionViolation):
        monodromy.taylor_branch_traces((0.1, 0, 0.3, 1.2), 1.0)


@given(st.tuples(cplx, cplx, cplx, cplx), cplx, cplx, st.sampled_from(["p0x", "px1", "p01"]))
def test_complete_traces_lands_on_cubic(pmu, u, v, missing):
    known = dict(zip([k for k in ("p0x", "px1", "p01") if k != missing], (u, v)))
    for d in monodromy.complete_traces(pmu, **known):
        scale = 1 + max(abs(w) for w in d.as_tuple()) ** 4
        assert abs(d.residual()) < 1e-12 * scale


def test_complete_traces_needs_one_unknown():
    with pytest.raises(ValueError):
        monodromy.complete_traces((2, 2, 2, 2), p0x=1)


@given(st.complex_numbers(min_magnitude=0.2, max_magnitude=2, allow_nan=False, allow_infinity=False),
       st.complex_numbers(min_magnitude=0.1, max_magnitude=3, allow_nan=False, allow_infinity=False))
def test_reflected_a_is_an_involution(sigma, a):
    th = (0.3, 0.2, 0.4, 1.7)
    assume(abs(monodromy.a_squared(sigma, th)) > 1e-3)
    b = monodromy.reflected_a(sigma, a, th)
    assert abs(monodromy.reflected_a(-sigma, b, th) - a) < 1e-10 * abs(a)


def test_reflected_a_product_is_reciprocal_of_literal_product():
    th = (0.3, 0.2, 0.4, 1.7)
    s, a = 0.37 + 0.1j, 0.8 - 0.2j
    prod = a * monodromy.reflected_a(s, a, th)
    assert abs(prod * monodromy.a_sigma_product(s, th) - 1) < 1e-14


def test_singular_a():
    th = (0.3, 0.2, 0.4, 1.7)
    with pytest.raises(SingularA):
        monodromy.a_sigma_product(0.5, th)
    with pytest.raises(SingularA):
        monodromy.reflected_a(0.3, 0, th)


def test_json_round_trip():
    d = MonodromyData(2, 2j, 0.5, -1, 1 + 1j, 3, -2)
    assert MonodromyData.from_json(d.to_json()) == d
