"""Acceptance suite: one PASS/FAIL line per criterion, at the stated tolerances.

Each test prints its line before asserting, so failures still report their
measured values. Criteria that need a scaling constant the standard scheme
does not define at these n are attempted as stated and fail.
"""

import math
import time

import mpmath
import numpy as np
import pytest

from ginibre_rates import cli
from ginibre_rates import operators as op
from ginibre_rates import specfun as sf
from ginibre_rates.errors import SchemeError
from ginibre_rates.laws import CdfKind, build_model, radius_cdf_exact
from ginibre_rates.rates import kappa_constants, rate_report
from ginibre_rates.sampler import SeedSpec, dkw_bound, ks_critical_value, ks_distance, ks_two_sample, sample_radius_kostlan
from ginibre_rates.scaling import Ensemble, Statistic, Variant, optimized_scaling, standard_scaling

R, D = Statistic.RIGHTMOST, Statistic.RADIUS
DECADES = (1e3, 1e4, 1e5, 1e6)


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number:>2} {'PASS' if ok else 'FAIL'}: {detail}")
        return ok

    return emit


def strictly_decreasing(xs):
    return all(a > b for a, b in zip(xs, xs[1:]))


def fmt(xs):
    return "[" + ", ".join(f"{x:.4g}" for x in xs) + "]"


def test_01_kappa_constants(report):
    start = time.perf_counter()
    k1, t1, k2, t2 = kappa_constants()
    secs = time.perf_counter() - start
    ok = 15.3 <= k1 <= 15.5 and 1.47 <= k2 <= 1.49 and secs < 1.0
    assert report(1, ok, f"kappa1={k1:.6f} (t*={t1:.4f}), kappa2={k2:.6f} (t*={t2:.4f}), {secs:.3f}s")


def test_02_trace_identity(report):
    start = time.perf_counter()
    worst, schemes = 0.0, []
    for n in (50, 500, 5000):
        try:
            scheme = standard_scaling(n, D)
        except SchemeError:
            scheme = optimized_scaling(n, D)
        schemes.append(f"{n}:{scheme.variant.value}")
        for t in (-2.0, 0.0, 3.0):
            exact = op.trace_radius_exact(n, t, scheme=scheme).value
            quad = op.trace_radius_quadrature(n, t, scheme=scheme).value
            worst = max(worst, abs(exact / quad - 1))
    secs = time.perf_counter() - start
    ok = worst <= 1e-8 and secs < 10
    assert report(2, ok, f"max rel diff {worst:.2e} (schemes {', '.join(schemes)}), {secs:.1f}s")


def test_03_trace_asymptotics(report):
    start = time.perf_counter()
    notes = []
    radius = [abs(op.trace_radius_exact(n, 0).value / op.trace_radius_asymptotic(n, 0).value - 1) for n in DECADES]
    radius_ok = all(e <= 10 / math.log(n) for e, n in zip(radius, DECADES)) and strictly_decreasing(radius)
    notes.append(f"radius errors {fmt(radius)} vs 10/log n {fmt([10 / math.log(n) for n in DECADES])}")
    try:
        right = [
            abs(op.trace_rightmost_quadrature(n, 0).value / op.trace_rightmost_asymptotic(n, 0).value - 1)
            for n in DECADES
        ]
        right_ok = all(e <= 10 / math.log(n) for e, n in zip(right, DECADES)) and strictly_decreasing(right)
        notes.append(f"rightmost errors {fmt(right)}")
    except SchemeError as exc:
        right_ok = False
        notes.append(f"rightmost: {exc}")
    secs = time.perf_counter() - start
    ok = radius_ok and right_ok and secs < 120
    assert report(3, ok, "; ".join(notes) + f"; {secs:.1f}s")


def test_04_model_vs_exact_cdf(report):
    start = time.perf_counter()
    t = np.linspace(-2.0, 8.0, 1001)
    gaps = []
    for n in DECADES:
        k = build_model(CdfKind.KOSTLAN_EXACT, n, D).cdf(t)
        e = build_model(CdfKind.EXP_NEG_TRACE, n, D).cdf(t)
        gaps.append(float(np.max(np.abs(k - e))))
    secs = time.perf_counter() - start
    ok = gaps[1] <= 0.05 and strictly_decreasing(gaps) and secs < 300
    assert report(4, ok, f"sup gaps {fmt(gaps)} along n={fmt(DECADES)}, {secs:.1f}s")


def test_05_fredholm(report):
    start = time.perf_counter()
    n = 1000
    scheme = optimized_scaling(n, R)  # standard rightmost scaling is undefined at n = 1000
    fine = op.fredholm_det_rightmost(n, 0.0, scheme=scheme)
    mid = op.fredholm_det_rightmost(n, 0.0, op.QuadSpec().with_nodes(48), scheme=scheme)
    tr = op.trace_rightmost_quadrature(n, 0.0, scheme=scheme).value
    det = fine.value
    gap = abs(det - math.exp(-tr))
    bound = op.det_error_bound(tr, fine.hs_norm)
    cauchy = abs(det - mid.value)
    secs = time.perf_counter() - start
    ok = 0 < det <= 1 and det <= math.exp(-tr) + 1e-12 and cauchy <= 1e-4 and gap <= bound and secs < 300
    detail = (f"optimized scheme, det={det:.8f}, e^-Tr={math.exp(-tr):.8f}, |det(64^2)-det(48^2)|={cauchy:.1e}, "
              f"|det-e^-Tr|={gap:.4f} <= bound {bound:.4f}, {secs:.1f}s")
    assert report(5, ok, detail)


def _fit_check(statistic, targets):
    ns = [1e4, 1e5, 1e6, 1e7, 1e8]
    try:
        rep = rate_report(ns, statistic, Ensemble.COMPLEX, Variant.STANDARD)
    except SchemeError as exc:
        return False, f"{statistic.value}: {exc}"
    sups = [r.sup_distance for r in rep.records]
    in_sup = 0.5 * targets[0] <= rep.c_sup <= 1.5 * targets[0]
    in_w1 = 0.5 * targets[1] <= rep.c_w1 <= 1.5 * targets[1]
    ok = in_sup and in_w1 and strictly_decreasing(sups)
    return ok, (f"{statistic.value}: c_sup={rep.c_sup:.4f} ({rep.c_sup / targets[0]:.3f} x target), "
                f"c_w1={rep.c_w1:.4f} ({rep.c_w1 / targets[1]:.3f} x target), sup {fmt(sups)}")


def test_06_rate_constants(report):
    start = time.perf_counter()
    ok_d, note_d = _fit_check(D, (2 / math.e, 2.0))
    ok_r, note_r = _fit_check(R, (25 / (4 * math.e), 25 / 4))
    secs = time.perf_counter() - start
    assert report(6, ok_d and ok_r and secs < 900, f"{note_d}; {note_r}; {secs:.1f}s")


def test_07_monte_carlo(report, timed_eig_radius_128, timed_kostlan_radius_128):
    start = time.perf_counter()
    count, alpha = 2 * 10**5, 1e-3
    bound = dkw_bound(count, alpha)
    ks = []
    for i, n in enumerate((1, 100, 10**4)):
        e = sample_radius_kostlan(n, count, SeedSpec(7000 + i))
        ks.append(ks_distance(e, lambda r, n=n: radius_cdf_exact(n, r)))
    eig, kos = timed_eig_radius_128.value, timed_kostlan_radius_128.value
    two = ks_two_sample(eig, kos)
    crit = ks_critical_value(eig.count, kos.count, alpha)
    secs = time.perf_counter() - start + timed_eig_radius_128.seconds + timed_kostlan_radius_128.seconds
    ok = max(ks) <= bound and two <= crit and secs < 600
    assert report(7, ok, f"KS {fmt(ks)} vs DKW {bound:.5f}; two-sample {two:.4f} vs {crit:.4f}; {secs:.1f}s")


def test_08_special_functions(report):
    start = time.perf_counter()
    s = np.repeat([0.5, 1.0, 3.0, 17.0, 150.0, 1e3, 1e4, 1e5, 1e6], 41)
    x = s * np.tile(np.linspace(0.2, 2.0, 41), 9)
    comp = float(np.max(np.abs(sf.reg_gamma_upper(s, x) + sf.reg_gamma_lower(s, x) - 1)))
    rec = 0.0
    for si in (1.0, 2.5, 10.0, 99.0, 101.0, 700.0, 9999.0):
        for lam in (0.3, 0.9, 1.0, 1.1, 2.0):
            xi = si * lam
            step = math.exp(si * math.log(xi) - xi - sf.log_gamma(si + 1))
            rec = max(rec, abs(sf.reg_gamma_upper(si + 1, xi) - sf.reg_gamma_upper(si, xi) - step))
    erfc_err = max(
        abs(sf.erfc(z) / (math.exp(-z * z) / (math.sqrt(math.pi) * z) * (1 - 1 / (2 * z * z))) - 1) * z**4 for z in (5.0, 10.0, 20.0)
    )
    a = np.linspace(0.5, 10, 2001)
    mu_err = float(np.max(np.abs(sf.mu(a) ** 2 + np.log(a) + 1 - a)))
    secs = time.perf_counter() - start
    ok = comp <= 1e-12 and rec <= 1e-11 and erfc_err <= 1.0 and mu_err <= 1e-12 and secs < 5
    detail = (f"Q+P-1 {comp:.1e}, recurrence {rec:.1e}, erfc remainder x^4 {erfc_err:.3f} (O(1) expected), "
              f"mu identity {mu_err:.1e}, {secs:.2f}s")
    assert report(8, ok, detail)


def test_09_scaling_solvers(report):
    worst = 0.0
    for n in (1e2, 1e4, 1e8):
        for stat in (R, D):
            g = optimized_scaling(n, stat).gamma
            with mpmath.workdps(50):
                gm = mpmath.mpf(g)
                lhs = 64 * gm**5 * mpmath.pi**4 * mpmath.e ** (2 * gm) if stat is R else 2 * mpmath.pi * gm**2 * mpmath.e**gm
                worst = max(worst, float(abs(lhs - n) / n))
    r1 = optimized_scaling(2 * math.pi * math.e, D).gamma
    with mpmath.workdps(30):
        n_right = float(64 * mpmath.pi**4 * mpmath.e**2)
    r2 = optimized_scaling(n_right, R).gamma
    ok = worst <= 1e-12 and abs(r1 - 1) <= 1e-10 and abs(r2 - 1) <= 1e-10
    assert report(9, ok, f"max residual {worst:.1e}; roots {r1:.15f} (n=2 pi e), {r2:.15f} (n=64 pi^4 e^2={n_right:.6f})")


def _cli_bytes(tmp_path, name, argv, workers):
    path = tmp_path / f"{name}-{workers}"
    code = cli.run(argv + ["--workers", str(workers), "--out", str(path)], {})
    assert code == 0
    return path.read_bytes()


def test_10_determinism(report, tmp_path):
    runs = {
        "rates": ["rates", "--n-list", "1e3,1e4,1e5", "--statistic", "radius"],
        "sample-kostlan": ["sample", "--route", "kostlan", "--n", "1000", "--count", "5000", "--seed", "11"],
        "sample-eig": ["sample", "--route", "eig", "--n", "24", "--count", "40", "--seed", "11", "--statistic", "rightmost"],
    }
    same = {}
    for name, argv in runs.items():
        outs = [_cli_bytes(tmp_path, name, argv, w) for w in (1, 2, 8)]
        same[name] = outs[0] == outs[1] == outs[2]
    ok = all(same.values())
    assert report(10, ok, ", ".join(f"{k} {'identical' if v else 'DIFFERENT'} at workers 1/2/8" for k, v in same.items()))


def test_11_real_traces(report):
    start = time.perf_counter()
    n = 1e5
    bound = 15 / math.log(n)
    q = op.trace_real_radius_quadrature(n, 0).value
    a = op.trace_radius_asymptotic(n, 0).value
    radius_err = abs(q / a - 1)
    notes = [f"radius {q:.5f} vs {a:.5f}, rel {radius_err:.3f} <= {bound:.3f}"]
    try:
        qr = op.trace_real_rightmost_quadrature(n, 0).value
        ar = op.trace_rightmost_asymptotic(n, 0).value
        right_err = abs(qr / ar - 1)
        notes.append(f"rightmost rel {right_err:.3f}")
    except SchemeError as exc:
        right_err = math.inf
        notes.append(f"rightmost: {exc}")
    secs = time.perf_counter() - start
    ok = radius_err <= bound and right_err <= bound and secs < 120
    assert report(11, ok, "; ".join(notes) + f"; {secs:.1f}s")
