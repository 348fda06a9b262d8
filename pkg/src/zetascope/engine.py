"""Riemann zeta evaluation engine.

Three evaluation routes, picked by a dispatcher:

  * Euler-Maclaurin: truncated Dirichlet sum plus Bernoulli corrections,
    valid in the whole plane, with an exact-rational branch at nonpositive
    integer arguments where the correction series terminates.
  * Riemann-Siegel: Hardy Z(t) main sum plus the first correction term,
    used on the critical line for large t.
  * Reflection: the functional equation, used for Re s < -1/2 where the
    Euler-Maclaurin direct sum cancels catastrophically.

Every evaluation returns an EvalResult carrying the value, an honest error
bound, and the method used.
"""

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from . import kernels
from .bernoulli import bernoulli_even, bernoulli_exact

__all__ = [
    "DomainError",
    "RangeError",
    "ConvergenceError",
    "EvalResult",
    "EulerMaclaurinParams",
    "RSDecomposition",
    "bernoulli_even",
    "log_gamma",
    "theta",
    "theta_deriv",
    "theta_minus_npi",
    "zeta_euler_maclaurin",
    "riemann_siegel_z",
    "hardy_z",
    "zeta_critical",
    "zeta",
    "zeta_array",
    "em_cutoff",
    "em_feasible",
    "sinpi",
    "log_sinpi",
]


class DomainError(ValueError):
    """Input is mathematically invalid (pole, nonpositive ordinate, ...)."""


class RangeError(DomainError):
    """Input lies outside the supported range of this routine."""


class ConvergenceError(ArithmeticError):
    """An iteration failed to converge to the requested accuracy."""


METHODS = ("euler_maclaurin", "riemann_siegel", "series", "reflection")

EM_MAX_M = kernels.EM_MAX_M
EM_N_CAP = 1 << 24  # largest direct-sum cutoff the dispatcher will attempt
RS_T_MIN = 20.0  # riemann_siegel_z precondition
RS_T_CROSS = 200.0  # dispatcher crossover from Euler-Maclaurin to Riemann-Siegel
RS_ERR_C = kernels.RS_ERR_C

_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class EulerMaclaurinParams:
    """Truncation parameters: direct sum to n-1, m correction terms."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("EulerMaclaurinParams: n must be >= 2")
        if not 1 <= self.m <= EM_MAX_M:
            raise ValueError("EulerMaclaurinParams: m must be in [1, %d]" % EM_MAX_M)


@dataclass(frozen=True)
class RSDecomposition:
    """Pieces of the Riemann-Siegel evaluation of Z(t)."""

    t: float
    m: int
    xi: float
    phi: float
    main_sum: float
    correction_g: float
    theta: float

    def __post_init__(self):
        if self.m != int(math.sqrt(self.t / (2.0 * math.pi))):
            raise ValueError("RSDecomposition: m must equal floor(sqrt(t/2pi))")
        if not 0.0 <= self.xi < 1.0:
            raise ValueError("RSDecomposition: xi must lie in [0, 1)")


@dataclass(frozen=True)
class EvalResult:
    """A numeric value with an error bound and the method that produced it."""

    value: complex
    error_bound: float
    method: str
    flags: tuple = ()
    params: Optional[EulerMaclaurinParams] = None
    rs: Optional[RSDecomposition] = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError("EvalResult: unknown method %r" % (self.method,))
        if not self.error_bound >= 0.0:
            raise ValueError("EvalResult: error_bound must be >= 0")


# ---------------------------------------------------------------------------
# elementary helpers
# ---------------------------------------------------------------------------


def sinpi(z):
    """sin(pi z) with argument reduction; exact zeros at integers."""
    z = complex(z)
    n = math.floor(z.real + 0.5)
    f = complex(z.real - n, z.imag)
    s = cmath.sin(math.pi * f)
    return -s if int(n) % 2 else s


def log_sinpi(z):
    """A logarithm of sin(pi z), stable for large |Im z|.

    The imaginary part is not branch-normalized; callers exponentiate it.
    """
    z = complex(z)
    y = z.imag
    if abs(y) < 0.5:
        return cmath.log(sinpi(z))
    if y > 0:
        return -1j * math.pi * z + cmath.log(0.5j) + cmath.log(1.0 - cmath.exp(2j * math.pi * z))
    return 1j * math.pi * z - cmath.log(2j) + cmath.log(1.0 - cmath.exp(-2j * math.pi * z))


def _log_sinpi_array(z):
    z = np.asarray(z, dtype=np.complex128)
    out = np.empty(z.shape, dtype=np.complex128)
    y = z.imag
    near = np.abs(y) < 0.5
    if near.any():
        with np.errstate(divide="ignore"):
            out[near] = np.log(kernels.sinpi_batch(z[near]))
    up = (~near) & (y > 0)
    if up.any():
        w = z[up]
        out[up] = -1j * math.pi * w + cmath.log(0.5j) + np.log1p(-np.exp(2j * math.pi * w))
    dn = (~near) & (y < 0)
    if dn.any():
        w = z[dn]
        out[dn] = 1j * math.pi * w - cmath.log(2j) + np.log1p(-np.exp(-2j * math.pi * w))
    return out


def log_gamma(s):
    """Principal-branch log-gamma via argument shifting plus Stirling."""
    s = complex(s)
    if s.imag == 0.0 and s.real <= 0.0 and s.real == math.floor(s.real):
        raise DomainError("log_gamma: pole at nonpositive integer s = %g" % s.real)
    return complex(kernels.loggamma_scalar(s))


def theta(t):
    """Riemann-Siegel theta: Im log Gamma(1/4 + it/2) - (t/2) log pi."""
    if not t > 0.0:
        raise DomainError("theta: requires t > 0, got %r" % (t,))
    return float(kernels.theta_fast(float(t)))


def theta_deriv(t):
    """d theta / dt, asymptotic form (accurate for t above a few)."""
    return 0.5 * math.log(t / (2.0 * math.pi)) - 1.0 / (48.0 * t * t)


# -- double-double residual theta(t) - n pi, needed because theta itself
#    carries ~|theta| ulp of roundoff, which exceeds 1e-9 above t ~ 1e6.


def _two_sum(a, b):
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def _split(a):
    c = 134217729.0 * a
    hi = c - (c - a)
    return hi, a - hi


def _two_prod(a, b):
    p = a * b
    ah, al = _split(a)
    bh, bl = _split(b)
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


_LN2PI_HI = 1.8378770664093453
_LN2PI_LO = 1.4447872176368647e-16
_PI_HI = math.pi
_PI_LO = 1.2246467991473532e-16


def _ln_dd(x):
    hi = math.log(x)
    r = x * math.exp(-hi) - 1.0
    return hi, r - 0.5 * r * r


def theta_minus_npi(t, n=0):
    """theta(t) - n pi with absolute accuracy ~5e-10 even for t ~ 1e7.

    For t >= 1000 the leading terms (t/2)(log(t/2pi) - 1) and n pi are formed
    in double-double arithmetic; below that, plain theta is already accurate.
    """
    if t < 1000.0:
        return theta(t) - n * math.pi
    lh, ll = _ln_dd(t)
    Lh, le = _two_sum(lh, -_LN2PI_HI)
    Ll = le + (ll - _LN2PI_LO)
    Lh, le = _two_sum(Lh, -1.0)
    Ll += le
    h = 0.5 * t
    p, pe = _two_prod(h, Lh)
    pe += h * Ll
    q, qe = _two_prod(n + 0.125, _PI_HI)
    qe += (n + 0.125) * _PI_LO
    r, re = _two_sum(p, -q)
    corr = 1.0 / (48.0 * t) + 7.0 / (5760.0 * t ** 3)
    return r + (re + pe - qe + corr)


# ---------------------------------------------------------------------------
# Euler-Maclaurin
# ---------------------------------------------------------------------------


def em_cutoff(t):
    """Direct-sum cutoff policy: N = max(10, ceil(1.3 |t|) + 10)."""
    return max(10, int(math.ceil(1.3 * abs(t))) + 10)


def em_feasible(t):
    """True when the cutoff policy stays under the dispatcher's term cap."""
    return em_cutoff(t) <= EM_N_CAP


def _zeta_nonpositive_int(m):
    """zeta(-m) for integer m >= 0, evaluated exactly in rationals.

    With N = 2 the correction series terminates (the rising product hits
    the factor s + m = 0), so the Euler-Maclaurin formula is exact here.
    """
    s = -m
    total = Fraction(1) + Fraction(1, 2) * Fraction(2) ** (-s) + Fraction(2) ** (1 - s) / (s - 1)
    m_used = 1
    for k in range(1, m // 2 + 2):
        prod = Fraction(1)
        for j in range(2 * k - 1):
            prod *= s + j
        if prod == 0:
            break
        total += bernoulli_exact(2 * k) / Fraction(math.factorial(2 * k)) * Fraction(2) ** (1 - s - 2 * k) * prod
        m_used = k
    v = float(total)
    return EvalResult(
        value=complex(v),
        error_bound=abs(v) * 2.0 * _EPS,
        method="euler_maclaurin",
        params=EulerMaclaurinParams(2, m_used),
    )


def zeta_euler_maclaurin(s, target_accuracy=1e-12, n_cut=None):
    """zeta(s) by the Euler-Maclaurin formula.

    The number of correction terms grows until the first-omitted-term bound
    meets target_accuracy, capped at 30; the returned error bound also
    accounts for direct-sum roundoff.  At real nonpositive integers the
    series terminates and is evaluated in exact rational arithmetic, making
    the trivial zeros exact.
    """
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError("zeta_euler_maclaurin: s must be finite")
    if s == 1:
        raise DomainError("zeta_euler_maclaurin: pole at s = 1")
    if s.imag == 0.0 and s.real <= 0.0 and s.real == math.floor(s.real):
        return _zeta_nonpositive_int(int(-s.real))
    n = n_cut if n_cut is not None else em_cutoff(s.imag)
    if n > EM_N_CAP:
        raise RangeError(
            "zeta_euler_maclaurin: cutoff %d exceeds cap %d; use zeta() dispatch" % (n, EM_N_CAP)
        )
    v, e, m = kernels.em_scalar(s, n, float(target_accuracy))
    flags = ()
    if not e <= target_accuracy:
        flags = ("target-accuracy-not-met",)
    return EvalResult(
        value=complex(v),
        error_bound=float(e),
        method="euler_maclaurin",
        flags=flags,
        params=EulerMaclaurinParams(n, int(m)),
    )


# ---------------------------------------------------------------------------
# Riemann-Siegel
# ---------------------------------------------------------------------------


def riemann_siegel_z(t):
    """Hardy Z(t) by the Riemann-Siegel formula (main sum + first correction).

    Requires t >= 20; below that the hardy_z dispatcher uses Euler-Maclaurin.
    The error bound is RS_ERR_C * t**-0.75 (calibrated constant, conservative
    by one to two orders against reference values).
    """
    t = float(t)
    if not t >= RS_T_MIN:
        raise RangeError(
            "riemann_siegel_z: requires t >= %g (use hardy_z, which dispatches "
            "small t to Euler-Maclaurin)" % RS_T_MIN
        )
    z, err, m, xi, phi, main, corr, th = kernels.rs_scalar(t)
    dec = RSDecomposition(
        t=t, m=int(m), xi=float(xi), phi=float(phi), main_sum=float(main),
        correction_g=float(corr), theta=float(th),
    )
    return EvalResult(value=complex(z), error_bound=float(err), method="riemann_siegel", rs=dec)


def _hardy_z_em(t, target_accuracy=1e-12):
    r = zeta_euler_maclaurin(complex(0.5, t), target_accuracy)
    th = theta(t)
    w = cmath.exp(1j * th) * r.value
    # rotation noise: a few ulp of theta, scaled by |zeta|
    err = r.error_bound + abs(w) * (4.0 * _EPS * max(abs(th), 1.0))
    return EvalResult(value=complex(w.real), error_bound=err, method="euler_maclaurin",
                      flags=r.flags, params=r.params)


def hardy_z(t, target_accuracy=None):
    """Hardy Z(t): Euler-Maclaurin below the crossover, Riemann-Siegel above.

    When the Riemann-Siegel value is smaller than its own error bound (sign
    unresolved) and the Euler-Maclaurin cutoff is affordable, the evaluation
    is upgraded automatically.
    """
    t = float(t)
    if not t > 0.0:
        raise DomainError("hardy_z: requires t > 0")
    if t < RS_T_CROSS:
        return _hardy_z_em(t, target_accuracy or 1e-12)
    r = riemann_siegel_z(t)
    need = max(1.5 * r.error_bound, target_accuracy or 0.0)
    if abs(r.value.real) < need and em_feasible(t):
        return _hardy_z_em(t)
    return r


def zeta_critical(t):
    """zeta(1/2 + it) recovered as e^{-i theta(t)} Z(t)."""
    t = float(t)
    if not t > 0.0:
        raise DomainError("zeta_critical: requires t > 0")
    r = hardy_z(t)
    val = cmath.exp(-1j * theta(t)) * r.value
    return EvalResult(value=val, error_bound=r.error_bound, method=r.method,
                      flags=r.flags, params=r.params, rs=r.rs)


# ---------------------------------------------------------------------------
# reflection and the dispatcher
# ---------------------------------------------------------------------------

_LN2 = math.log(2.0)
_LNPI = math.log(math.pi)


def _zeta_reflect(s, target_accuracy):
    """zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s), in log space."""
    # sinpi overflows for |Im s| > ~450; the exact zero needs a real argument
    if s.imag == 0.0 and sinpi(s / 2.0) == 0:
        return EvalResult(value=0.0 + 0.0j, error_bound=0.0, method="reflection")
    inner = zeta_euler_maclaurin(1.0 - s, target_accuracy)
    lg = s * _LN2 + (s - 1.0) * _LNPI + log_sinpi(s / 2.0) + log_gamma(1.0 - s)
    if lg.real > 705.0:
        return EvalResult(value=complex(math.inf, 0.0), error_bound=math.inf,
                          method="reflection", flags=("overflow",))
    pref = cmath.exp(lg)
    val = pref * inner.value
    err = abs(pref) * inner.error_bound + abs(val) * (abs(lg) + 4.0) * 4.0 * _EPS
    return EvalResult(value=val, error_bound=err, method="reflection")


def zeta(s, target_accuracy=1e-12):
    """Evaluate zeta(s) anywhere, choosing the method automatically.

    Routes: exact-rational Euler-Maclaurin at real nonpositive integers,
    reflection for Re s < -1/2, Riemann-Siegel on the critical line for
    |Im s| >= 200 when its bound meets target_accuracy, Euler-Maclaurin
    otherwise.  Raises DomainError at the pole s = 1.
    """
    s = complex(s)
    if not (math.isfinite(s.real) and math.isfinite(s.imag)):
        raise DomainError("zeta: s must be finite")
    if s == 1:
        raise DomainError("zeta: pole at s = 1")
    flags = ()
    if abs(s - 1.0) < 1e-6:
        flags = ("near-pole",)
    if s.imag == 0.0 and s.real <= 0.0 and s.real == math.floor(s.real):
        return _zeta_nonpositive_int(int(-s.real))
    if s.real < -0.5:
        r = _zeta_reflect(s, target_accuracy)
        return EvalResult(r.value, r.error_bound, r.method, r.flags + flags)
    t = abs(s.imag)
    on_line = s.real == 0.5
    if on_line and t >= RS_T_CROSS and RS_ERR_C * t ** -0.75 <= target_accuracy:
        r = hardy_z(t, target_accuracy)
        val = cmath.exp(-1j * theta(t)) * r.value
        if s.imag < 0:
            val = val.conjugate()
        return EvalResult(val, r.error_bound, r.method, r.flags + flags, r.params, r.rs)
    n = em_cutoff(t)
    if n <= EM_N_CAP:
        r = zeta_euler_maclaurin(s, target_accuracy)
        return EvalResult(r.value, r.error_bound, r.method, r.flags + flags, r.params)
    if on_line and t >= RS_T_MIN:
        r = hardy_z(t)
        val = cmath.exp(-1j * theta(t)) * r.value
        if s.imag < 0:
            val = val.conjugate()
        f = r.flags + flags
        if r.error_bound > target_accuracy:
            f += ("target-accuracy-not-met",)
        return EvalResult(val, r.error_bound, r.method, f, r.params, r.rs)
    r = zeta_euler_maclaurin(s, target_accuracy, n_cut=EM_N_CAP)
    return EvalResult(r.value, r.error_bound, r.method,
                      r.flags + flags + ("cutoff-capped",), r.params)


def zeta_array(ss, target_accuracy=1e-10):
    """Vectorized zeta over an array of points (grid sampling path).

    Returns (values, error_bounds).  Points with Re s < -1/2 go through the
    reflection formula, the rest through a shared-cutoff Euler-Maclaurin
    batch.  Exact nonpositive-integer inputs are not special-cased here;
    the reflection route makes trivial zeros exact through sinpi.
    """
    ss = np.ascontiguousarray(ss, dtype=np.complex128)
    vals = np.empty(ss.shape, dtype=np.complex128)
    errs = np.full(ss.shape, np.inf)
    pole = ss == 1.0
    right = (ss.real >= -0.5) & ~pole
    left = (ss.real < -0.5) & ~pole
    if right.any():
        sr = ss[right]
        n = em_cutoff(float(np.max(np.abs(sr.imag))))
        v, e, m = kernels.em_batch(sr, n, float(target_accuracy))
        vals[right] = v
        errs[right] = e
    if left.any():
        sl = ss[left]
        s1 = 1.0 - sl
        n = em_cutoff(float(np.max(np.abs(s1.imag))))
        v1, e1, m1 = kernels.em_batch(s1, n, float(target_accuracy))
        lg = sl * _LN2 + (sl - 1.0) * _LNPI + _log_sinpi_array(sl / 2.0) + kernels.loggamma_batch(1.0 - sl)
        exact0 = ~np.isfinite(lg.real)  # log_sinpi hit an exact trivial zero
        with np.errstate(over="ignore", invalid="ignore", divide="ignore"):
            pref = np.exp(lg)
            v = pref * v1
            e = np.abs(pref) * e1 + np.abs(v) * (np.abs(lg) + 4.0) * 4.0 * _EPS
        v[exact0] = 0.0
        e[exact0] = 0.0
        vals[left] = v
        errs[left] = e
    if pole.any():
        vals[pole] = np.inf
        errs[pole] = np.inf
    return vals, errs
