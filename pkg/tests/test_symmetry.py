import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from painleve6 import monodromy, oracle, params, series, symmetry
from painleve6.errors import ConditionViolation, DivisionByZero, ReciprocalOfZeroSeries
from painleve6.params import ThetaClass

OPS = ["permute01", "invx", "swapxy"]
cplx = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)


def random_on_cubic(rng, n):
    out = []
    while len(out) < n:
        z = rng.normal(size=(6, 2)) @ [1, 1j]
        out.extend(monodromy.complete_traces(z[:4], p0x=z[4], px1=z[5]))
    return out[:n]


@pytest.mark.parametrize("op", OPS)
def test_fricke_invariance(op):
    for d in random_on_cubic(np.random.default_rng(1), 1000):
        e = symmetry.apply_to_traces(op, d)
        scale = 1 + max(abs(v) for v in d.as_tuple()) ** 4
        assert abs(e.residual()) < 1e-12 * scale


@pytest.mark.parametrize("op", OPS)
@given(st.tuples(cplx, cplx, cplx, cplx))
def test_theta_involution(op, t):
    back = symmetry.apply_to_theta(op, symmetry.apply_to_theta(op, t))
    assert back.equivalent(ThetaClass(*t))


@pytest.mark.parametrize("op", OPS)
def test_traces_follow_theta(op):
    th = (0.3, 0.2 + 0.1j, 0.4, 1.7)
    d = monodromy.complete_traces(params.trace_from_theta(th), p0x=0.5, px1=1.5j)[0]
    e = symmetry.apply_to_traces(op, d)
    assert np.allclose((e.p0, e.px, e.p1, e.pInf), symmetry.apply_to_theta_traces(op, th), atol=1e-12)


@pytest.mark.parametrize("op", OPS)
def test_point_involution(op):
    x, y, dy = 0.3 + 0.2j, 0.7 - 0.1j, 1.2 + 0.4j
    back = symmetry.apply_to_point_derivative(op, *symmetry.apply_to_point_derivative(op, x, y, dy))
    assert np.allclose(back, (x, y, dy), atol=1e-14)


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        symmetry.apply_to_point("swapxy", 0.5, 0)
    with pytest.raises(DivisionByZero):
        symmetry.apply_to_point("invx", 0, 0.5)


def test_unknown_op():
    with pytest.raises(ConditionViolation):
        symmetry.SymmetryOp.parse("rotate")


@pytest.mark.parametrize("tag,consts", [("PowerGeneric", {"sigma": 0.3 + 0.1j, "a": 0.8}),
                                        ("TaylorRow3", {"a": 2}),
                                        ("LogRow2", {"a": 0.3})])
def test_swap_twice_on_expansions(tag, consts):
    th = (0, 0, 0.4, 1.7) if tag == "TaylorRow3" else (0.45, 0.2, 0.3, 1.6)
    b = series.expand_branch(tag, consts, th, 6)
    bb = symmetry.transport_expansion("swapxy", symmetry.transport_expansion("swapxy", b))
    assert bb.theta.equivalent(b.theta)
    for x in (1e-3, 2e-3 + 1e-3j, 5e-3j):
        v, w = series.evaluate_value(b, x), series.evaluate_value(bb, x)
        assert abs(v - w) < 1e-12 * abs(v)


def test_transport_zero_series():
    b = series.expand_branch("TaylorRow3", {"a": 2}, (0, 0, 0.4, 1.7), 4)
    zero = b.__class__(**{**b.__dict__, "coefficients": {}})
    with pytest.raises(ReciprocalOfZeroSeries):
        symmetry.transport_expansion("swapxy", zero)


def test_transport_permute_moves_point():
    b = series.expand_branch("PowerGeneric", {"sigma": 0.3, "a": 1}, (0.3, 0.2, 0.4, 1.7), 6)
    tb = symmetry.transport_expansion("permute01", b)
    x = 2e-3 + 1e-3j
    assert tb.criticalPoint == "1"
    assert abs(series.evaluate_value(tb, 1 - x) - (1 - series.evaluate_value(b, x))) < 1e-12


def _run(th, x0, y0, dy0, path):
    tr = oracle.integrate(params.coefficients_from_theta(th), x0, y0, dy0, path, tol=1e-12)
    return tr.final()


@pytest.mark.parametrize("op", OPS)
@settings(max_examples=8, deadline=None)
@given(st.tuples(*[st.floats(0.05, 0.9)] * 3, st.floats(1.1, 1.9)))
def test_oracle_equivariance(op, th):
    x0, y0, dy0 = 0.3 + 0.05j, 0.4 + 0.1j, 0.2 - 0.1j
    path = [0.45 + 0.2j, 0.6 + 0.1j]
    x1, y1, dy1 = _run(th, x0, y0, dy0, path)
    X0, Y0, DY0 = symmetry.apply_to_point_derivative(op, x0, y0, dy0)
    mapped = [symmetry.apply_to_point(op, p, 1)[0] for p in path]
    _, Y1, _ = _run(symmetry.apply_to_theta(op, th), X0, Y0, DY0, mapped)
    want = symmetry.apply_to_point(op, x1, y1)[1]
    assert abs(Y1 - want) < 1e-7 * abs(want)
