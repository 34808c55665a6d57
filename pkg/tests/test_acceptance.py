"""Acceptance criteria; each test prints one PASS/FAIL line with its timing."""
import math
import sys
import time
import warnings

import numpy as np
import pytest

sys.path.insert(0, __file__.rsplit("/", 1)[0])

from admissible import sample  # noqa: E402
from painleve6 import elliptic, golden, monodromy, poles, series, shimomura, symmetry  # noqa: E402
from painleve6.covering import CoveringPoint  # noqa: E402

TOL = {
    "fricke": 1e-10,
    "delta": 1e-3,
    "ratio": 1e-14,
    "arg": 1e-10,
    "refine": 10.0,
    "taylor": 1e-8,
    "exponent": 1e-3,
    "sin_form": 1e-10,
    "elliptic": 1e-8,
    "agm": 1e-12,
    "lattice": 1e-8,
    "de": 1e-8,
    "slope": 0.1,
    "continuation": 1e-10,
}


@pytest.fixture
def report(capsys):
    def _report(n, title, ok, detail, t0, limit):
        dt = time.perf_counter() - t0
        ok = bool(ok) and dt < limit
        with capsys.disabled():
            print(f"\n[criterion {n}] {'PASS' if ok else 'FAIL'}  {title}: {detail}  ({dt:.2f}s < {limit}s)")
        assert ok, detail
    return _report


def test_1_fricke_and_symmetries(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    data = []
    while len(data) < 1000:
        z = rng.uniform(-1.5, 1.5, (6, 2)) @ [1, 1j]
        data.extend(monodromy.complete_traces(z[:4], p0x=z[4], px1=z[5]))
    worst = 0.0
    for d in data[:1000]:
        worst = max(worst, abs(d.residual()))
        for op in ("permute01", "invx", "swapxy"):
            worst = max(worst, abs(symmetry.apply_to_traces(op, d).residual()))
    report(1, "Fricke residual before and after each symmetry", worst < TOL["fricke"],
           f"max |residual| {worst:.1e}", t0, 5)


def test_2_cp2_pole_constants(report):
    t0 = time.perf_counter()
    rec = poles.cp2_expansion(5, 40)
    got = {(N, j): float(poles._c(v).real) for j in (1, 2) for N, v in poles.pole_corrections(rec, j, 4).items()}
    dev = max(abs(got[k] - v) for k, v in golden.CP2_DELTAS.items())
    detail = ", ".join(f"Delta{N}({j}) = {got[(N, j)]:.5f}" for N, j in golden.CP2_DELTAS)
    report(2, "CP2 pole corrections", dev < TOL["delta"], f"{detail}; max deviation {dev:.1e}", t0, 30)


def test_3_lattice_geometry(report):
    t0 = time.perf_counter()
    worst_ratio = worst_arg = 0.0
    for rec in (poles.cp2_expansion(3, 30), poles.reciprocal_coefficients(0.4, 0.3 + 0.2j, (0.3, 0.2, 0.4, 1.7), 3, 30)):
        nu = float(poles._c(rec.nu).real)
        lat = {(k, j): x for k, j, x in poles.zero_lattice(rec, range(0, 4))}
        q = math.exp(-math.pi / nu)
        for k in range(3):
            for j in (1, 2):
                r = abs(poles._c(lat[(k + 1, j)] / lat[(k, j)]))
                worst_ratio = max(worst_ratio, abs(r - q) / q)
    rec = poles.cp2_expansion(3, 30)
    worst_arg = max(abs(np.angle(poles._c(x)) + math.pi / 2) for _, _, x in poles.zero_lattice(rec, range(0, 4)))
    ok = worst_ratio < TOL["ratio"] and worst_arg < TOL["arg"]
    report(3, "pole lattice ratio and CP2 argument", ok,
           f"ratio error {worst_ratio:.1e}, max |arg x_k + pi/2| {worst_arg:.1e}", t0, 1)


def test_4_refinement_vs_prediction(report):
    t0 = time.perf_counter()
    rec = poles.cp2_expansion(10, 60)
    worst = 0.0
    for k, j in ((0, 1), (0, 2), (1, 1)):
        xi = poles.refine_pole(rec, k, j)[0]
        pred = poles.predicted_pole(rec, k, j, 4)
        xk = abs(poles._c(poles.zero_lattice(rec, [k], [j])[0][2]))
        worst = max(worst, float(abs(xi - pred) / abs(xi)) / xk ** 3)
    report(4, "Newton-refined poles vs order-4 prediction", worst < TOL["refine"],
           f"max relative error / |x_k|^3 = {worst:.2e}", t0, 60)


def test_5_series_vs_oracle(report):
    t0 = time.perf_counter()
    rel = golden.taylor_series_vs_oracle()
    e = golden.power_exponent_fit()
    ok = rel < TOL["taylor"] and abs(e - 0.7) < TOL["exponent"]
    report(5, "Taylor series vs oracle, PowerGeneric exponent", ok,
           f"Taylor relative error {rel:.1e}; exponent {e.real:.6f}{e.imag:+.1e}i", t0, 10)


def _sigma0_vs_sin_form(s, a, th):
    br = shimomura.v_coefficients(s, a, th, 8)
    b = series.expand_branch("PowerGeneric", {"sigma": s, "a": a}, th, 12)
    L0 = -8.0
    if s.real == 0:
        A, phi, B = series.sin_form_from_cosh_form(s, a, th)
        b = series.expand_branch("PowerGeneric", {"sigma": s, "a": series.cosh_form_from_sin_form(A, phi)}, th, 12)
    arg0 = (s.real * L0 - math.log(abs(a)) - math.log(0.03)) / s.imag
    path = shimomura.SigmaPath(CoveringPoint(L0, arg0), 0.0, s)
    worst = 0.0
    for cp in path.points(np.linspace(-14, -8, 12)):
        yp = series.evaluate_value(b, cp)
        worst = max(worst, abs(br.value(cp, check_domain=False) - yp) / abs(yp))
    return worst


def test_6_representation_equivalences(report):
    t0 = time.perf_counter()
    th = (0.3, 0.2, 0.4, 1.7)
    sf = max(_sigma0_vs_sin_form(0.4 + 0.3j, 0.7 - 0.2j, th), _sigma0_vs_sin_form(0.6j, 0.7 - 0.2j, th))
    el = golden.elliptic_vs_shimomura(100)
    ok = sf < TOL["sin_form"] and el < TOL["elliptic"]
    report(6, "Shimomura vs sin form, elliptic vs Shimomura", ok,
           f"sin form {sf:.1e}; elliptic {el:.1e} on 100 points", t0, 30)


def test_7_special_functions(report):
    t0 = time.perf_counter()
    agm = max(abs(elliptic.half_periods(x).omega1 - golden.agm_omega1(x)) / golden.agm_omega1(x)
              for x in np.linspace(0.005, 0.895, 90))
    w1, w2 = 1.3 + 0.1j, 0.4 + 1.1j
    rng = np.random.default_rng(7)
    zs = rng.uniform(-0.6, 0.6, (3, 2)) @ [1, 1j]
    lat = max(abs(elliptic.weierstrass_p(z, w1, w2) - golden.lattice_sum_p(z, w1, w2))
              / abs(elliptic.weierstrass_p(z, w1, w2)) for z in zs)
    g2, g3 = elliptic.invariants(w1, w2)
    de = 0.0
    for z in rng.normal(size=(50, 2)) @ [1, 1j]:
        p, dp = elliptic.weierstrass_p(z, w1, w2, derivative=True)
        de = max(de, abs(dp * dp - 4 * p ** 3 + g2 * p + g3) / (abs(4 * p ** 3) + abs(g2 * p) + abs(g3)))
    ok = agm < TOL["agm"] and lat < TOL["lattice"] and de < TOL["de"]
    report(7, "half periods, Weierstrass P, P differential equation", ok,
           f"AGM {agm:.1e}; lattice sum {lat:.1e}; DE residual {de:.1e}", t0, 10)


def lsq_slope(b, la, arg):
    """Least-squares slope of ln|R| against ln|x| along a ray."""
    vals = [series._mp_log_abs(series.pointwise_residual(b, (float(l), arg))) for l in la]
    return float(np.polyfit(la, vals, 1)[0])


def test_8_residual_order_suite(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(8)
    la = np.linspace(-500, -400, 41)
    rows, ok = [], True
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        for tag in series.CLASS_TAGS:
            th, consts = sample(tag, rng)
            b = series.expand_branch(tag, consts, th, 3, digits=1200, residual_order=True)
            s = lsq_slope(b, la, 0.3)
            good = s >= b.residualOrder - TOL["slope"]
            ok &= bool(good)
            rows.append(f"{tag} {s:.2f}/{b.residualOrder:.2f}")
    report(8, "measured / predicted residual slope", ok, "; ".join(rows), t0, 120)


def test_9_continuation(report):
    t0 = time.perf_counter()
    w = golden._continuation_grid(poles.continue_branch)
    report(9, "continuation phi -> phi + 4 pi i nu per loop", w < TOL["continuation"],
           f"max relative difference {w:.1e}", t0, 5)


@pytest.mark.xfail(strict=True, reason="one loop shifts phi by 4 pi i nu; the quoted 2 pi i nu is half of it")
def test_9_continuation_quoted_shift(report):
    t0 = time.perf_counter()
    w = golden._continuation_grid(poles.continue_branch_literal)
    report(9, "continuation phi -> phi + 2 pi i nu per loop (quoted)", w < TOL["continuation"],
           f"max relative difference {w:.1e}", t0, 5)
