"""Acceptance gate: one test per published criterion, each printing a single
PASS/FAIL line (run with `pytest tests/test_acceptance.py -s` to see them all).

Every check runs at its stated tolerance and time budget; budgets count the
computation only, after the session-wide backend warmup."""

import cmath
import math
import time

import numpy as np
import pytest

from zetascope import engine, gallery, gram, xray

FIRST_SIX_LISTED = (14.13, 21.02, 25.01, 30.42, 32.93, 37.58)
# the published two-decimal list is truncated, not rounded (32.93 stands for
# 32.935...), so "+-0.005 around the listed value" is unattainable for the
# fifth and sixth zeros; the checks below demand the truncated match plus
# tight agreement with the full-precision ordinates
FIRST_SIX_FULL = (14.134725141734694, 21.022039638771555, 25.010857580145689,
                  30.424876125859513, 32.935061587739190, 37.586178158825671)
PI_OVER_LN2 = math.pi / math.log(2.0)


def _matches_listed(t, listed, full, slack):
    return math.floor(t * 100.0) / 100.0 == listed and abs(t - full) <= slack


def _report(num, label, elapsed, budget, failures):
    status = "PASS" if not failures else "FAIL"
    inside = "%.2f s" % elapsed
    if budget is not None:
        inside += " / budget %g s" % budget
    print("ACCEPTANCE %2d %-32s %s (%s)" % (num, label, status, inside))
    assert not failures, "; ".join(failures)


def _check(failures, ok, msg):
    if not ok:
        failures.append(msg)


def test_criterion_01_first_six_zeros(warm_backend):
    t0 = time.perf_counter()
    scan = gram.find_zeros(10.0, 40.0)
    dt = time.perf_counter() - t0
    bad = []
    _check(bad, len(scan) == 6, "expected 6 zeros, got %d" % len(scan))
    for rec, want, full in zip(scan, FIRST_SIX_LISTED, FIRST_SIX_FULL):
        _check(bad, _matches_listed(rec.t, want, full, 1e-5),
               "zero %.6f vs listed %g" % (rec.t, want))
    _check(bad, dt < 1.0, "runtime %.2f s over 1 s" % dt)
    _report(1, "first six zeros", dt, 1.0, bad)


def test_criterion_02_zero_counts(warm_backend):
    t0 = time.perf_counter()
    counts = {T: gram.count_N(T) for T in (50.0, 100.0, 200.0)}
    # independent census: dense Hardy Z sign changes on a fixed grid
    ts = np.arange(2.0, 200.0 + 0.125, 0.125)
    zv, _ = gram.z_values(ts, upgrade=False)
    sgn = np.sign(zv)
    flips = ts[1:][(sgn[1:] * sgn[:-1]) < 0]
    census = {T: int(np.sum(flips <= T)) for T in (50.0, 100.0, 200.0)}
    dt = time.perf_counter() - t0
    bad = []
    _check(bad, counts[50.0] == 10, "N(50) = %d" % counts[50.0])
    _check(bad, counts[100.0] == 29, "N(100) = %d" % counts[100.0])
    _check(bad, counts[200.0] == 79, "N(200) = %d" % counts[200.0])
    for T in counts:
        _check(bad, counts[T] == census[T],
               "census mismatch at %g: %d vs %d" % (T, counts[T], census[T]))
    _check(bad, dt < 5.0, "runtime %.2f s over 5 s" % dt)
    _report(2, "zero counts vs census", dt, 5.0, bad)


def test_criterion_03_gram_law_audit(warm_backend):
    t0 = time.perf_counter()
    rep = gram.audit_laws(-1, 128)
    dt = time.perf_counter() - t0
    bad = []
    early = [v for v in rep.gram_violations if v["interval"][0] < 125]
    _check(bad, not early, "violations before 125: %r" % early)
    by_interval = {v["interval"]: v["count"] for v in rep.gram_violations}
    _check(bad, by_interval.get((125, 126)) == 0, "interval (125,126) not empty")
    _check(bad, by_interval.get((126, 127)) == 2,
           "interval (126,127) holds %r zeros" % by_interval.get((126, 127)))
    _check(bad, dt < 10.0, "runtime %.2f s over 10 s" % dt)
    _report(3, "Gram law audit [-1, 127]", dt, 10.0, bad)


def test_criterion_04_lehmer_pair(warm_backend):
    t0 = time.perf_counter()
    glo = gram.gram_point(6707).t
    ghi = gram.gram_point(6708).t
    scan = gram.find_zeros(glo, ghi)
    bad = []
    _check(bad, len(scan) == 2, "expected 2 zeros in the Gram interval")
    if len(scan) == 2:
        _check(bad, abs(scan[0].t - 7005.0629) <= 0.005, "zero 1 at %g" % scan[0].t)
        _check(bad, abs(scan[1].t - 7005.1006) <= 0.005, "zero 2 at %g" % scan[1].t)
        a, b = scan[0].t, scan[1].t
        for _ in range(70):
            m1, m2 = a + (b - a) / 3.0, b - (b - a) / 3.0
            if engine.riemann_siegel_z(m1).value.real < \
                    engine.riemann_siegel_z(m2).value.real:
                a = m1
            else:
                b = m2
        tmax = 0.5 * (a + b)
        z_rs = engine.riemann_siegel_z(tmax)
        em = engine.zeta_euler_maclaurin(complex(0.5, tmax), 1e-13)
        z_em = (cmath.exp(1j * engine.theta(tmax)) * em.value).real
        _check(bad, abs(tmax - 7005.0819) <= 0.01, "max at t = %g" % tmax)
        _check(bad, abs(z_rs.value.real - 0.0039675) <= 5e-4,
               "Z max (RS) = %g" % z_rs.value.real)
        _check(bad, abs(z_em - 0.0039675) <= 5e-4,
               "Z max (EM fallback) = %g" % z_em)
        _check(bad, abs(z_rs.value.real - z_em) <=
               z_rs.error_bound + em.error_bound, "EM does not confirm RS")
    dt = time.perf_counter() - t0
    _check(bad, dt < 30.0, "runtime %.2f s over 30 s" % dt)
    _report(4, "Lehmer pair near t = 7005", dt, 30.0, bad)


def test_criterion_05_rosser_counterexample(warm_backend):
    t0 = time.perf_counter()
    rep = gram.audit_laws(13999520, 13999530)
    bad = []
    block = next((b for b in rep.blocks
                  if b.start_index == 13999525 and b.end_index == 13999527), None)
    _check(bad, block is not None, "block (13999525, 13999527) not found")
    if block is not None:
        _check(bad, block.zero_count == 0,
               "block holds %d zeros" % block.zero_count)
        _check(bad, any(v["block"] == block for v in rep.rosser_violations),
               "block not reported as a Rosser violation")
    _check(bad, rep.interval_counts.get(13999527) == 3,
           "interval (13999527, 13999528) holds %r zeros"
           % rep.interval_counts.get(13999527))
    span_lo = gram.gram_point(13999525).t
    span_hi = gram.gram_point(13999528).t
    ext = gram.s_extrema(span_lo, span_hi)
    s_min = min(e.s_before for e in ext)
    _check(bad, abs(s_min - (-2.004138)) <= 5e-3, "min S = %g" % s_min)
    dt = time.perf_counter() - t0
    _check(bad, dt < 120.0, "runtime %.2f s over 2 min" % dt)
    _report(5, "Rosser rule counterexample", dt, 120.0, bad)


def test_criterion_06_van_de_lune_sigma0(warm_backend):
    t0 = time.perf_counter()
    val = gram.van_de_lune_sigma0()
    dt = time.perf_counter() - t0
    bad = []
    ref = 1.1923473371861932
    _check(bad, abs(val - ref) <= 0.5 * 10.0**(1 - 12) * ref,
           "sigma0 = %.16g" % val)
    _check(bad, dt < 30.0, "runtime %.2f s over 30 s" % dt)
    _report(6, "van de Lune sigma0, 12 digits", dt, 30.0, bad)


def test_criterion_07_line_numbering_property(warm_backend, zeta_oracle):
    t0 = time.perf_counter()
    bad = []
    checked = 0
    for j in range(50):
        k = 2 + 8 * j  # every other parallel is zero-free; verified per line
        seed = complex(9.0, k * PI_OVER_LN2)
        pts, zero, reason = xray._trace_thick_line(
            zeta_oracle, seed, eastward=False, watch_zero=True,
            sigma_stop_west=-1.3)
        _check(bad, reason == "west" and zero is None,
               "parallel k=%d not zero-free (%s)" % (k, reason))
        if reason != "west":
            continue
        T = None
        for a, b in zip(pts, pts[1:]):
            if (a.real + 1.0) * (b.real + 1.0) <= 0.0 and a.real != b.real:
                w = (-1.0 - a.real) / (b.real - a.real)
                T = a.imag + w * (b.imag - a.imag)
                break
        _check(bad, T is not None and T <= 2000.0, "k=%d no crossing" % k)
        if T is None:
            continue
        n_line = gram.line_number(T)
        _check(bad, n_line % 4 == 1, "k=%d: N = %d not 1 mod 4" % (k, n_line))
        _check(bad, (n_line + 3) // 4 == gram.count_N(T),
               "k=%d: (N+3)/4 = %d vs census %d"
               % (k, (n_line + 3) // 4, gram.count_N(T)))
        checked += 1
    _check(bad, checked == 50, "only %d heights checked" % checked)
    dt = time.perf_counter() - t0
    _report(7, "line numbering vs census x50", dt, None, bad)


def test_criterion_08_dual_method_agreement(warm_backend):
    t0 = time.perf_counter()
    rng = np.random.default_rng(20240817)
    bad = []
    worst = 0.0
    for t in rng.uniform(50.0, 1.0e5, size=200):
        t = float(t)
        if t < engine.RS_T_MIN:
            continue
        rs = engine.riemann_siegel_z(t)
        em = engine.zeta_euler_maclaurin(complex(0.5, t))
        z_em = (cmath.exp(1j * engine.theta(t)) * em.value).real
        gap = abs(rs.value.real - z_em)
        worst = max(worst, gap * t**0.75)
        _check(bad, gap <= 10.0 * t**-0.75,
               "t=%.3f: |Z_EM - Z_RS| = %.3g over bound" % (t, gap))
    dt = time.perf_counter() - t0
    _report(8, "EM vs RS x200 (worst c=%.2f)" % worst, dt, None, bad)


def test_criterion_09_zeta_xray_figure(warm_backend, zeta_oracle):
    t0 = time.perf_counter()
    rect = xray.Rectangle(-30.0, 10.0, -10.0, 40.0)
    res = xray.trace_rectangle(zeta_oracle, rect)
    dt = time.perf_counter() - t0
    bad = []
    # thin level curves cross the real axis at every trivial zero; the only
    # other crossing is the one pinned to the pole
    xs = []
    for c in res.curves:
        if c.kind != "thin":
            continue
        for a, b in zip(c.points, c.points[1:]):
            if a.imag * b.imag <= 0.0 and a.imag != b.imag:
                w = -a.imag / (b.imag - a.imag)
                xs.append(a.real + w * (b.real - a.real))
    evens = [x for x in xs if x < -1.0 and abs(x - 2.0 * round(x / 2.0)) <= 0.02]
    extra = [x for x in xs if x not in evens]
    _check(bad, sorted(round(x) for x in evens) == list(range(-28, -1, 2)),
           "trivial-zero crossings: %r" % sorted(evens))
    _check(bad, len(extra) == 1 and 0.5 <= extra[0] <= 1.05,
           "unexpected extra crossings: %r" % extra)
    strip = sorted(s.point.imag for s in res.singularities
                   if s.type == "zero" and 0.0 <= s.point.real <= 1.0
                   and s.point.imag > 1.0)
    _check(bad, len(strip) == 6, "%d strip crossings" % len(strip))
    for got, full in zip(strip, FIRST_SIX_FULL):
        _check(bad, abs(got - full) <= 0.005, "strip zero %g vs %g" % (got, full))
    for sigma in (3.0, 5.0, 7.0, 9.0, 10.0 - 1e-6):
        cross = []
        for c in res.curves:
            if c.kind == "thick":
                cross.extend(t for t in xray.curve_crossings(c, sigma) if t > 0)
        cross.sort()
        _check(bad, len(cross) >= 7, "sigma=%g: %d crossings" % (sigma, len(cross)))
        mean_gap = (cross[-1] - cross[0]) / (len(cross) - 1)
        _check(bad, abs(mean_gap - 4.5324) <= 0.1,
               "sigma=%g mean spacing %.4f" % (sigma, mean_gap))
        if sigma >= 9.0:
            gaps = np.diff(cross)
            _check(bad, np.max(np.abs(gaps - 4.5324)) <= 0.1,
                   "sigma=%g gap deviates %.4f" % (sigma, np.max(np.abs(gaps - 4.5324))))
    thin_max = max(max(p.real for p in c.points)
                   for c in res.curves if c.kind == "thin")
    _check(bad, thin_max <= 1.6363, "thin curve reaches sigma = %g" % thin_max)
    joined = [c for c in res.curves if c.kind == "thin" and c.crossing_numbers
              and set(c.crossing_numbers) == {-2, 0}]
    _check(bad, len(joined) == 1 and
           min(abs(p - complex(0.5, 14.134725)) for p in joined[0].points) <= 0.05,
           "thin lines -2 and 0 do not join through the first zero")
    _check(bad, dt < 120.0, "runtime %.2f s over 2 min" % dt)
    _report(9, "zeta x-ray (-30,10)x(-10,40)", dt, 120.0, bad)


def test_criterion_10_gallery_xrays(warm_backend):
    t0 = time.perf_counter()
    h7 = gallery.get_oracle("hermite7")
    res_h = xray.trace_rectangle(h7, xray.Rectangle(-17.0, 17.0, -17.0, 17.0))
    j7 = gallery.get_oracle("bessel_j7")
    res_j = xray.trace_rectangle(j7, xray.Rectangle(-8.0, 8.0, -8.0, 8.0))
    dt = time.perf_counter() - t0
    bad = []
    zeros_h = [s for s in res_h.singularities if s.type == "zero"]
    saddles_h = [s for s in res_h.singularities if s.type == "saddle"]
    _check(bad, len(zeros_h) == 7, "H7: %d zeros" % len(zeros_h))
    _check(bad, len(saddles_h) == 6, "H7: %d saddles" % len(saddles_h))
    origin = [s for s in res_j.singularities
              if s.type == "zero" and abs(s.point) <= 0.5]
    _check(bad, len(origin) == 1, "J7: %d zeros near origin" % len(origin))
    if origin:
        _check(bad, origin[0].multiplicity >= 2,
               "J7 multiplicity %d" % origin[0].multiplicity)
    _check(bad, dt < 60.0, "runtime %.2f s over 1 min" % dt)
    _report(10, "Hermite/Bessel gallery x-rays", dt, 60.0, bad)


def test_criterion_11_sheet_permutation(warm_backend):
    t0 = time.perf_counter()
    perm, sheets = xray.sheet_permutation(count=20, start=-1)
    dt = time.perf_counter() - t0
    bad = []
    want = [1, 2, 3, 4, 5, 7, 6, 8, 10, 9, 11, 13, 12, 14, 16, 15, 17, 18, 20, 19]
    _check(bad, perm == want, "permutation %r" % (perm,))
    _check(bad, dt < 60.0, "runtime %.2f s over 1 min" % dt)
    _report(11, "sheet permutation, first 20", dt, 60.0, bad)


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v", "-s"]))
