"""Gallery oracles checked against mpmath and exact polynomial identities."""

import math

import mpmath as mp
import numpy as np
import pytest

from zetascope import gallery
from zetascope.engine import DomainError

AI_0 = 0.35502805388781723926
AI_1 = 0.13529241631288141552
AI_FIRST_ZERO = -2.3381074104597670385
J7_FIRST_ZERO = 11.086370019245083846

# H7 with leading coefficient 128, descending powers
H7_COEFFS = (128.0, 0.0, -1344.0, 0.0, 3360.0, 0.0, -1680.0, 0.0)


def _bisect_real_zero(orc, lo, hi, iters=200):
    flo = orc(complex(lo, 0.0)).value.real
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        fm = orc(complex(mid, 0.0)).value.real
        if flo * fm <= 0.0:
            hi = mid
        else:
            lo, flo = mid, fm
    return 0.5 * (lo + hi)


def test_oracle_names():
    assert gallery.ORACLE_NAMES == (
        "zeta", "hermite7", "bessel_j7", "airy_ai", "gamma", "user_polynomial")
    with pytest.raises(DomainError):
        gallery.get_oracle("nope")


def test_hermite7_exact_polynomial_values():
    orc = gallery.get_oracle("hermite7")
    assert orc(1.0).value == 464.0 + 0.0j
    rng = np.random.default_rng(20240817)
    for _ in range(25):
        z = complex(rng.uniform(-4.0, 4.0), rng.uniform(-4.0, 4.0))
        ref = complex(np.polyval(H7_COEFFS, z))
        r = orc(z)
        assert abs(r.value - ref) <= r.error_bound + 1e-12 * abs(ref)
        # odd function
        assert abs(orc(-z).value + r.value) <= 2.0 * r.error_bound + 1e-12 * abs(ref)


def test_hermite7_against_mpmath():
    orc = gallery.get_oracle("hermite7")
    with mp.workdps(30):
        for z in (0.3 + 0.2j, 2.5 - 1.0j, -3.0 + 3.0j):
            ref = complex(mp.hermite(7, z))
            r = orc(z)
            assert abs(r.value - ref) <= r.error_bound + 1e-13 * abs(ref)


def test_bessel_j7_against_mpmath():
    orc = gallery.get_oracle("bessel_j7")
    rng = np.random.default_rng(101)
    with mp.workdps(35):
        for _ in range(20):
            z = complex(rng.uniform(-15.0, 15.0), rng.uniform(-8.0, 8.0))
            ref = complex(mp.besselj(7, z))
            r = orc(z)
            assert abs(r.value - ref) <= r.error_bound + 1e-14 * abs(ref), z


def test_bessel_j7_first_positive_zero():
    orc = gallery.get_oracle("bessel_j7")
    root = _bisect_real_zero(orc, 10.5, 11.5)
    assert abs(root - J7_FIRST_ZERO) <= 1e-8


def test_airy_reference_values():
    orc = gallery.get_oracle("airy_ai")
    r0 = orc(0.0)
    assert abs(r0.value - AI_0) <= max(r0.error_bound, 1e-14)
    r1 = orc(1.0)
    assert abs(r1.value - AI_1) <= max(r1.error_bound, 1e-14)


def test_airy_first_zero():
    orc = gallery.get_oracle("airy_ai")
    root = _bisect_real_zero(orc, -2.5, -2.2)
    assert abs(root - AI_FIRST_ZERO) <= 1e-9


def test_airy_against_mpmath():
    orc = gallery.get_oracle("airy_ai")
    rng = np.random.default_rng(202)
    with mp.workdps(35):
        for _ in range(20):
            z = complex(rng.uniform(-8.0, 8.0), rng.uniform(-6.0, 6.0))
            ref = complex(mp.airyai(z))
            r = orc(z)
            assert abs(r.value - ref) <= r.error_bound + 1e-14 * abs(ref), z


def test_gamma_reference_values():
    orc = gallery.get_oracle("gamma")
    r = orc(5.0)
    assert abs(r.value - 24.0) <= max(r.error_bound, 24.0 * 1e-13)
    r = orc(0.5)
    assert abs(r.value - math.sqrt(math.pi)) <= max(r.error_bound, 1e-13)


def test_gamma_against_mpmath():
    orc = gallery.get_oracle("gamma")
    rng = np.random.default_rng(303)
    with mp.workdps(30):
        checked = 0
        while checked < 20:
            z = complex(rng.uniform(-5.5, 5.5), rng.uniform(-5.0, 5.0))
            if z.imag == 0.0 or min(abs(z - k) for k in range(-6, 1)) < 0.05:
                continue
            ref = complex(mp.gamma(z))
            r = orc(z)
            assert abs(r.value - ref) <= r.error_bound + 1e-12 * abs(ref), z
            checked += 1


def test_gamma_pole_handling():
    orc = gallery.get_oracle("gamma")
    with pytest.raises(DomainError):
        orc(-2.0)
    assert orc.poles_in((-3.5, 0.5, -0.5, 0.5)) == [0j, -1 + 0j, -2 + 0j, -3 + 0j]


def test_zeta_oracle_declares_its_pole():
    orc = gallery.get_oracle("zeta")
    assert orc.poles_in((-5.0, 5.0, -5.0, 5.0)) == [1 + 0j]
    assert orc.poles_in((2.0, 5.0, -5.0, 5.0)) == []


def test_conjugate_symmetry_of_real_functions():
    rng = np.random.default_rng(404)
    for name in ("hermite7", "bessel_j7", "airy_ai", "gamma"):
        orc = gallery.get_oracle(name)
        for _ in range(10):
            z = complex(rng.uniform(-4.0, 4.0), rng.uniform(0.1, 4.0))
            if name == "gamma" and min(abs(z.conjugate() - k) for k in range(-5, 1)) < 0.1:
                continue
            a = orc(z).value
            b = orc(z.conjugate()).value
            assert abs(b - a.conjugate()) <= 1e-13 * (1.0 + abs(a)), (name, z)


def test_eval_array_matches_scalar():
    rng = np.random.default_rng(505)
    zz = np.array([complex(rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0))
                   for _ in range(16)])
    for name in ("hermite7", "bessel_j7", "airy_ai"):
        orc = gallery.get_oracle(name)
        vals, errs = orc.eval_array(zz)
        for z, v, e in zip(zz, vals, errs):
            r = orc(complex(z))
            assert abs(v - r.value) <= 1e-14 * (1.0 + abs(v))
            assert e <= 4.0 * r.error_bound + 1e-18


def test_derivative_matches_exact_hermite_derivative():
    orc = gallery.get_oracle("hermite7")
    dcoef = np.polyder(np.array(H7_COEFFS))
    for z in (0.7, -1.3 + 0.4j, 2.1 - 2.0j):
        ref = complex(np.polyval(dcoef, z))
        got = orc.derivative(complex(z))
        assert abs(got - ref) <= 1e-5 * (1.0 + abs(ref))


def test_user_polynomial_oracle():
    orc = gallery.get_oracle("user_polynomial", coeffs=[2.0, 0.0, -8.0])
    assert orc(2.0).value == 0.0 + 0.0j
    assert orc(0.0).value == -8.0 + 0.0j
    vals, _ = orc.eval_array(np.array([1.0 + 0.0j, 1.0j]))
    assert vals[0] == -6.0 + 0.0j
    assert vals[1] == -10.0 + 0.0j
    with pytest.raises(DomainError):
        gallery.get_oracle("user_polynomial")
