import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from painleve6 import series, shimomura
from painleve6.covering import CoveringPoint
from painleve6.errors import ConditionViolation, OutsideDomain, SingularA

TH = (0.3, 0.2, 0.4, 1.7)


@pytest.fixture(scope="module")
def branch():
    return shimomura.v_coefficients(0.4 + 0.3j, 0.7 - 0.2j, TH, 8)


def _triple(d, cp):
    """log margins of |x| < r, |a x^(1-sigma)| < 4r, |x^sigma / a| < r/4."""
    L = cp.log
    return (math.log(d.r) - cp.log_abs,
            math.log(4 * d.r) - (cmath.log(d.a) + (1 - d.sigma) * L).real,
            math.log(d.r / 4) - (d.sigma * L - cmath.log(d.a)).real)


@given(st.floats(-30, 0), st.floats(-20, 20), st.floats(0.05, 0.95), st.floats(-2, 2),
       st.complex_numbers(min_magnitude=0.1, max_magnitude=5, allow_nan=False, allow_infinity=False))
def test_domain_is_inequality_triple(L, arg, sr, si, a):
    assume(abs(si) > 1e-3)
    d = shimomura.CriticalDomain(0.1, complex(sr, si), a)
    cp = CoveringPoint(L, arg)
    m = _triple(d, cp)
    assume(min(abs(v) for v in m) > 1e-9)
    assert d.contains(cp) == all(v > 0 for v in m)


def test_cosh_denominator_bounded_below(branch):
    rng = np.random.default_rng(3)
    d = branch.domain()
    s = branch.sigma
    n = 0
    while n < 300:
        L = rng.uniform(-30, math.log(d.r))
        lo, hi = d.bounds(L)
        if lo >= hi:
            continue
        cp = CoveringPoint(L, rng.uniform(lo, hi) / s.imag)
        t2, t3 = branch.variables(cp)
        if max(abs(t2), abs(t3)) > 0.05:
            continue
        n += 1
        c = shimomura.cosh_denominator(branch, cp)
        ev = cmath.exp(branch.v(cp))
        # cosh^2 Z = (e^v + t2/2 + t2^2 e^-v / 16) / t2, so |cosh Z|^2 >= (1 - 0.1) / 0.05
        assert abs(c * c * t2 - (ev + t2 / 2 + t2 * t2 / ev / 16)) < 1e-10 * abs(ev)
        assert abs(c) > 4


@pytest.mark.parametrize("s,a", [(0.4 + 0.3j, 0.7 - 0.2j), (0.25 - 0.6j, 1.3 + 0.4j)])
def test_sigma0_paths_match_power_expansion(s, a):
    br = shimomura.v_coefficients(s, a, TH, 8)
    b = series.expand_branch("PowerGeneric", {"sigma": s, "a": a}, TH, 12)
    L0 = -8.0
    arg0 = (s.real * L0 - math.log(abs(a)) - math.log(0.03)) / s.imag
    path = shimomura.SigmaPath(CoveringPoint(L0, arg0), 0.0, s)
    for cp in path.points(np.linspace(-14, -8, 8)):
        yp = series.evaluate_value(b, cp)
        assert abs(br.value(cp, check_domain=False) - yp) < 1e-10 * abs(yp)


def test_v_vanishes_at_origin_of_t_variables(branch):
    assert abs(branch.V.c[0, 0]) < 1e-14


def test_separating_strip_is_parallel():
    s, a = 0.2 + 0.7j, 1.3
    rule = shimomura.aya_rule(s, a, TH)
    d1, d2 = shimomura.domain_for_N(s, rule, 0, 1), shimomura.domain_for_N(s, rule, 0, -1)
    w = [np.diff(shimomura.separating_strip(d1, d2, L))[0] for L in (-10.0, -20.0)]
    assert w[0] > 0 and abs(w[0] - w[1]) < 1e-12


def test_errors(branch):
    with pytest.raises(ConditionViolation):
        shimomura.v_coefficients(1.5, 1, TH, 4)
    with pytest.raises(ConditionViolation):
        shimomura.v_coefficients(0.3, 0, TH, 4)
    with pytest.raises(OutsideDomain):
        branch.value(0.5)
    with pytest.raises(ConditionViolation):
        shimomura.SigmaPath(CoveringPoint(0, 0), 1.5, 0.3 + 0.2j)
    with pytest.raises(ConditionViolation):
        shimomura.aya_rule(0.3 + 0.2j, 1, TH)(2.3 + 0.2j)
    with pytest.raises(SingularA):
        shimomura.domain_for_N(0.3, {0.3: 0}, 0)
