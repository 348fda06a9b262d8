"""Evaluation engine checks against independent oracles (mpmath, sympy)
and against the package's own error-bound contract."""

import cmath
import math
from fractions import Fraction

import mpmath as mp
import numpy as np
import pytest

from zetascope import engine
from zetascope.bernoulli import bernoulli_even, bernoulli_exact
from zetascope.engine import ConvergenceError, DomainError, RangeError

# reference values computed once with mpmath at 25 significant digits
ZERO_ORDINATES = (
    14.13472514173469379,
    21.022039638771554993,
    25.010857580145688763,
    30.42487612585951321,
    32.935061587739189691,
    37.586178158825671257,
    40.918719012147495187,
    43.327073280914999519,
    48.005150881167159728,
    49.773832477672302182,
)
THETA_100 = 87.972165231787219625
THETA_1000 = 2034.5464280380316087
THETA_1E6 = 5488816.353078403444883
Z_100 = 2.692697056664463475
Z_1000 = 0.99779463752158661399
Z_1E5 = 5.8795924686817650415
APERY = 1.2020569031595942854


def _mp_zeta(s, dps=30):
    with mp.workdps(dps):
        v = mp.zeta(mp.mpc(s.real, s.imag))
        return complex(v)


def test_bernoulli_exact_matches_sympy():
    import sympy

    # the two B1 sign conventions differ; this package uses B1 = -1/2
    assert bernoulli_exact(1) == Fraction(-1, 2)
    for n in [0] + list(range(2, 62)):
        assert bernoulli_exact(n) == Fraction(sympy.Rational(sympy.bernoulli(n)))


def test_bernoulli_even_table():
    assert bernoulli_even(1) == Fraction(1, 6)
    assert bernoulli_even(2) == Fraction(-1, 30)
    assert bernoulli_even(15) == bernoulli_exact(30)


def test_zeta_two_is_pi_squared_over_six():
    r = engine.zeta(2.0)
    assert abs(r.value - math.pi**2 / 6.0) <= r.error_bound
    tight = engine.zeta(2.0, target_accuracy=1e-15)
    assert abs(tight.value - math.pi**2 / 6.0) <= 1e-14


def test_zeta_three_apery():
    r = engine.zeta(3.0)
    assert abs(r.value - APERY) <= max(r.error_bound, 1e-14)


def test_zeta_at_zero_and_negative_one_exact():
    assert engine.zeta(0.0).value == -0.5
    r = engine.zeta(-1.0)
    assert r.value.real == float(Fraction(-1, 12))
    assert r.value.imag == 0.0


def test_trivial_zeros_exact():
    for k in range(1, 21):
        r = engine.zeta(-2.0 * k)
        assert r.value == 0.0
        assert r.error_bound == 0.0


def test_trivial_zeros_exact_through_array_path():
    ss = np.array([-2.0 + 0.0j, -8.0 + 0.0j, -20.0 + 0.0j, -34.0 + 0.0j])
    vals, errs = engine.zeta_array(ss)
    assert np.all(vals == 0.0)


def test_pole_raises_and_near_pole_flag():
    with pytest.raises(DomainError):
        engine.zeta(1.0)
    r = engine.zeta(1.0 + 1e-8j)
    assert any("pole" in f for f in r.flags)


def test_nonfinite_rejected():
    with pytest.raises(DomainError):
        engine.zeta(complex(math.nan, 0.0))
    with pytest.raises(DomainError):
        engine.zeta(complex(math.inf, 1.0))


def test_exception_hierarchy():
    assert issubclass(RangeError, DomainError)
    assert issubclass(DomainError, ValueError)
    assert issubclass(ConvergenceError, ArithmeticError)


def test_error_bounds_honest_on_random_points():
    rng = np.random.default_rng(20240817)
    checked = 0
    while checked < 40:
        s = complex(rng.uniform(-8.0, 8.0), rng.uniform(0.0, 400.0))
        if abs(s - 1.0) < 0.1:
            continue
        r = engine.zeta(s)
        ref = _mp_zeta(s)
        assert abs(r.value - ref) <= r.error_bound + 1e-15 * abs(ref), s
        checked += 1


def test_error_bounds_honest_at_large_height():
    for t in (50000.3, 74921.7, 200000.1):
        s = complex(0.5, t)
        r = engine.zeta(s, target_accuracy=1e-12)
        ref = _mp_zeta(s, dps=40)
        assert abs(r.value - ref) <= r.error_bound + 1e-15 * abs(ref), t


def test_reflection_at_large_height_does_not_overflow():
    # regression: sinpi used to overflow for |Im s| > ~450 on this route
    for s in (complex(-1.0, 500.0), complex(-0.7, 2000.0), complex(-2.3, 1234.5)):
        r = engine.zeta(s)
        ref = _mp_zeta(s, dps=35)
        assert r.method == "reflection"
        assert abs(r.value - ref) <= r.error_bound + 1e-13 * abs(ref), s


def test_conjugate_symmetry_is_exact():
    rng = np.random.default_rng(7)
    for _ in range(20):
        s = complex(rng.uniform(-6.0, 6.0), rng.uniform(0.5, 300.0))
        if abs(s - 1.0) < 0.1:
            continue
        assert engine.zeta(s.conjugate()).value == engine.zeta(s).value.conjugate()


def test_euler_maclaurin_params_reported():
    r = engine.zeta(complex(0.5, 100.0))
    assert r.method == "euler_maclaurin"
    assert r.params.n >= 130
    assert 1 <= r.params.m <= 30


def test_target_accuracy_not_met_is_flagged():
    r = engine.zeta(complex(0.5, 7005.0819), target_accuracy=1e-30)
    assert any("target" in f for f in r.flags)


def test_theta_against_mpmath():
    assert abs(engine.theta(100.0) - THETA_100) <= 1e-11
    assert abs(engine.theta(1000.0) - THETA_1000) <= 1e-10
    assert abs(engine.theta(1.0e6) - THETA_1E6) <= 1e-8


def test_theta_deriv_matches_finite_difference():
    rng = np.random.default_rng(11)
    for _ in range(12):
        t = rng.uniform(20.0, 5000.0)
        h = 1e-4 * max(1.0, t * 1e-3)
        fd = (engine.theta(t + h) - engine.theta(t - h)) / (2.0 * h)
        assert abs(fd - engine.theta_deriv(t)) <= 1e-6 * abs(fd)


def test_hardy_z_reference_values():
    # below the crossover the Euler-Maclaurin route is tight
    r = engine.hardy_z(100.0)
    assert abs(r.value.real - Z_100) <= 5e-9
    assert r.value.imag == 0.0
    # above it hardy_z returns Riemann-Siegel; only its own bound is promised
    for t, ref in ((1000.0, Z_1000), (1.0e5, Z_1E5)):
        r = engine.hardy_z(t)
        assert r.method == "riemann_siegel"
        assert abs(r.value.real - ref) <= r.error_bound
        em = engine.zeta_euler_maclaurin(complex(0.5, t), 1e-11)
        z_em = (cmath.exp(1j * engine.theta(t)) * em.value).real
        assert abs(z_em - ref) <= 5e-8, t


def test_hardy_z_domain():
    with pytest.raises(DomainError):
        engine.hardy_z(0.0)
    with pytest.raises(DomainError):
        engine.hardy_z(-3.0)


def test_riemann_siegel_decomposition_consistent():
    r = engine.riemann_siegel_z(300.0)
    d = r.rs
    assert d.m == int(math.sqrt(300.0 / (2.0 * math.pi)))
    assert 0.0 <= d.xi < 1.0
    assert abs((d.main_sum + d.correction_g) - r.value.real) <= 1e-15
    assert abs(d.theta - engine.theta(300.0)) <= 1e-9


def test_riemann_siegel_range():
    with pytest.raises(RangeError):
        engine.riemann_siegel_z(5.0)


def test_em_and_rs_agree_on_hardy_z():
    rng = np.random.default_rng(20240817)
    for t in rng.uniform(50.0, 1.0e5, size=40):
        if t < engine.RS_T_MIN:
            continue
        rs = engine.riemann_siegel_z(float(t))
        em = engine.zeta_euler_maclaurin(complex(0.5, float(t)))
        z_em = (cmath.exp(1j * engine.theta(float(t))) * em.value).real
        assert abs(rs.value.real - z_em) <= rs.error_bound + em.error_bound
        assert abs(rs.value.real - z_em) <= 10.0 * float(t) ** -0.75


def test_zeta_critical_matches_dispatcher():
    for t in (30.0, 250.0, 1234.5):
        a = engine.zeta_critical(t)
        b = engine.zeta(complex(0.5, t))
        assert abs(a.value - b.value) <= a.error_bound + b.error_bound


def test_zeta_array_matches_scalar():
    rng = np.random.default_rng(3)
    ss = []
    while len(ss) < 50:
        s = complex(rng.uniform(-6.0, 6.0), rng.uniform(-50.0, 50.0))
        if abs(s - 1.0) > 0.2:
            ss.append(s)
    ss = np.array(ss)
    vals, errs = engine.zeta_array(ss, target_accuracy=1e-12)
    for s, v, e in zip(ss, vals, errs):
        r = engine.zeta(complex(s))
        assert abs(v - r.value) <= e + r.error_bound + 1e-15 * abs(v)


def test_zeta_array_error_bounds_honest():
    rng = np.random.default_rng(5)
    ss = np.array([complex(rng.uniform(-4.0, 4.0), rng.uniform(2.0, 120.0))
                   for _ in range(25)])
    vals, errs = engine.zeta_array(ss)
    for s, v, e in zip(ss, vals, errs):
        ref = _mp_zeta(complex(s))
        assert abs(v - ref) <= e + 1e-15 * abs(ref)


def test_log_gamma_against_mpmath():
    rng = np.random.default_rng(13)
    with mp.workdps(30):
        for _ in range(15):
            z = complex(rng.uniform(0.5, 20.0), rng.uniform(0.0, 40.0))
            ref = complex(mp.loggamma(z))
            got = engine.log_gamma(z)
            assert abs(got - ref) <= 1e-12 * (1.0 + abs(ref)), z


def test_sinpi_exact_at_integers():
    for k in range(-6, 7):
        assert engine.sinpi(float(k)) == 0.0
    assert abs(engine.sinpi(0.5) - 1.0) <= 1e-15
