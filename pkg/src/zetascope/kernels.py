"""Hot numeric loops: zeta partial sums, Riemann-Siegel sums, series kernels.

Every kernel has a scalar/loop form (compiled with numba when that backend
is active) and a vectorized numpy form.  Dispatch happens once at import
time; see backend.py.  The loop forms are also kept un-jitted as reference
implementations for the numpy backend's scalar calls with small N.
"""

import cmath
import math

import numpy as np

from .backend import USING_NUMBA, njit, prange
from .bernoulli import EM_COEFF, STIRLING

# module-level float tables (read as constants inside jitted code)
_EMC = np.array(EM_COEFF)
_STIR = np.array(STIRLING)

EM_MAX_M = 30  # cap on the number of Euler-Maclaurin correction terms
_EPS = 2.220446049250313e-16
LN2PI = 1.8378770664093453
RS_ERR_C = 3.0  # calibrated constant: |Z - Z_rs| <= RS_ERR_C * t**-0.75 for t >= 20

# ---------------------------------------------------------------------------
# loop implementations (numba-jittable source)
# ---------------------------------------------------------------------------


def _loggamma_loop(z):
    # principal-branch log-gamma: argument shift until Stirling is accurate
    shift = 0.0 + 0.0j
    k = 0
    while abs(z) < 12.0 or z.real < 0.5:
        shift += cmath.log(z)
        z = z + 1.0
        k += 1
        if k > 160:
            break
    r = (z - 0.5) * cmath.log(z) - z + 0.5 * LN2PI
    w = 1.0 / z
    z2 = w * w
    acc = 0.0 + 0.0j
    for i in range(1, 16):
        term = _STIR[i] * w
        acc += term
        if abs(term) < 1e-17 * (abs(r) + 1.0):
            break
        w *= z2
    return r + acc - shift


def _theta_loop(t):
    # theta(t) = Im log Gamma(1/4 + i t/2) - (t/2) log pi
    lg = _loggamma_loop(complex(0.25, 0.5 * t))
    return lg.imag - 0.5 * t * math.log(math.pi)


def _em_loop(s, n_cut, target):
    """Euler-Maclaurin zeta: direct sum to n_cut-1 plus corrections.

    Returns (value, error_bound, m_used).  The bound is the first-omitted
    correction term times |s+2M+1|/(sigma+2M+1), plus direct-sum roundoff.
    """
    sig = s.real
    tim = abs(s.imag)
    ssum = 0.0 + 0.0j
    sumabs = 1.0
    sumlnabs = 0.0
    for n in range(1, n_cut):
        ln = math.log(n)
        term = cmath.exp(-s * ln)
        ssum += term
        a = abs(term)
        sumabs += a
        sumlnabs += a * ln
    lnn = math.log(n_cut)
    npow = cmath.exp((1.0 - s) * lnn)  # n_cut^{1-s}
    half = 0.5 * cmath.exp(-s * lnn)
    pole = npow / (s - 1.0)
    tk = _EMC[1] * (npow / (n_cut * n_cut)) * s
    total = half + pole
    absT = abs(half) + abs(pole)
    k = 1
    bound = abs(tk)
    while True:
        total += tk
        absT += abs(tk)
        tnext = tk * ((_EMC[k + 1] / _EMC[k]) * (s + (2 * k - 1)) * (s + 2 * k) / (n_cut * n_cut))
        denom = sig + 2 * k + 1.0
        if denom > 0.0:
            bound = abs(tnext) * abs(s + (2 * k + 1)) / denom
        else:
            bound = math.inf
        if (bound <= target and denom > 0.0) or k >= EM_MAX_M:
            break
        tk = tnext
        k += 1
    # roundoff: direct-sum accumulation plus the phase error of t*log(n),
    # which dominates once |t| is large
    roundoff = _EPS * (4.0 * (sumabs + absT) + tim * sumlnabs)
    return ssum + total, bound + roundoff, k


def _rs_loop(t):
    """Riemann-Siegel Z(t), main sum plus first correction term.

    Returns (z, err, m, xi, phi, main_sum, corr, theta).
    """
    a = math.sqrt(t / (2.0 * math.pi))
    m = int(a)
    xi = a - m
    th = _theta_loop(t)
    main = 0.0
    sab = 0.0
    for n in range(1, m + 1):
        rs = 1.0 / math.sqrt(n)
        main += math.cos(th - t * math.log(n)) * rs
        sab += rs
    main *= 2.0
    # h(xi) = cos(2 pi phi) / cos(2 pi xi), phi = xi - xi^2 + 1/16, with a
    # local Taylor patch across the removable singularities xi = 1/4, 3/4
    phi = xi - xi * xi + 0.0625
    u1 = xi - 0.25
    u3 = xi - 0.75
    pi2 = math.pi * math.pi
    if abs(u1) < 1e-3:
        h = 0.5 - u1 + (pi2 / 4.0) * u1 * u1 - (pi2 / 6.0) * u1 * u1 * u1
    elif abs(u3) < 1e-3:
        h = 0.5 + u3 + (pi2 / 4.0) * u3 * u3 + (pi2 / 6.0) * u3 * u3 * u3
    else:
        h = math.cos(2.0 * math.pi * phi) / math.cos(2.0 * math.pi * xi)
    corr = h * (t / (2.0 * math.pi)) ** (-0.25)
    if m % 2 == 0:
        corr = -corr
    # truncation bound plus phase roundoff of the large arguments th - t log n
    err = RS_ERR_C * t ** (-0.75) + _EPS * (abs(th) + t * math.log(m + 1.0)) * 2.0 * sab
    return main + corr, err, m, xi, phi, main, corr, th


def _em_batch_loop(ss, n_cut, target, vals, errs, ms):
    for i in prange(ss.shape[0]):
        v, e, m = _em_loop(ss[i], n_cut, target)
        vals[i] = v
        errs[i] = e
        ms[i] = m


def _rs_batch_loop(ts, zs, errs, mm, xis, ths):
    for i in prange(ts.shape[0]):
        z, e, m, xi, phi, main, corr, th = _rs_loop(ts[i])
        zs[i] = z
        errs[i] = e
        mm[i] = m
        xis[i] = xi
        ths[i] = th


def _profile_loop(sig, t, lnn, cosv, sinv, target):
    """zeta(sig + i t) with precomputed tables for a fixed t (argument walks).

    lnn/cosv/sinv hold log n, cos(t log n), sin(t log n) for n = 1..N-1.
    """
    n_cut = lnn.shape[0] + 1
    re = 1.0
    im = 0.0
    sumabs = 1.0
    sumlnabs = 0.0
    for j in range(1, lnn.shape[0]):
        a = math.exp(-sig * lnn[j])
        re += a * cosv[j]
        im -= a * sinv[j]
        sumabs += a
        sumlnabs += a * lnn[j]
    s = complex(sig, t)
    lnN = math.log(n_cut)
    npow = cmath.exp((1.0 - s) * lnN)
    half = 0.5 * cmath.exp(-s * lnN)
    pole = npow / (s - 1.0)
    tk = _EMC[1] * (npow / (n_cut * n_cut)) * s
    total = half + pole
    k = 1
    bound = abs(tk)
    while True:
        total += tk
        tnext = tk * ((_EMC[k + 1] / _EMC[k]) * (s + (2 * k - 1)) * (s + 2 * k) / (n_cut * n_cut))
        denom = sig + 2 * k + 1.0
        if denom > 0.0:
            bound = abs(tnext) * abs(s + (2 * k + 1)) / denom
        else:
            bound = math.inf
        if (bound <= target and denom > 0.0) or k >= EM_MAX_M:
            break
        tk = tnext
        k += 1
    return complex(re, im) + total, bound + _EPS * (4.0 * sumabs + abs(t) * sumlnabs)


# ---- special-function series kernels --------------------------------------


def _h7_loop(z):
    # Hermite H_7 (physicists'), exact integer coefficients, Horner form
    z2 = z * z
    val = (((128.0 * z2 - 1344.0) * z2 + 3360.0) * z2 - 1680.0) * z
    a2 = abs(z) * abs(z)
    mag = (((128.0 * a2 + 1344.0) * a2 + 3360.0) * a2 + 1680.0) * abs(z)
    return val, 8.0 * _EPS * mag


def _j7_loop(z):
    # Bessel J_7 power series: (z/2)^7 sum_k (-1)^k (z/2)^{2k} / (k! (k+7)!)
    w = 0.5 * z
    w2 = w * w
    w4 = w2 * w2
    term = (w4 * w2 * w) / 5040.0
    total = term
    maxmag = abs(term)
    small = 0
    k = 0
    while k < 500:
        k += 1
        term = -term * w2 / (k * (k + 7.0))
        total += term
        a = abs(term)
        if a > maxmag:
            maxmag = a
        if a < 1e-16 * (abs(total) + 1e-300):
            small += 1
            if small >= 5:
                break
        else:
            small = 0
    return total, 4.0 * _EPS * maxmag + abs(term)


_AI0 = 0.3550280538878172  # 3^{-2/3} / Gamma(2/3) = Ai(0)
_SQRT3_HALF = 0.8660254037844386
_C3 = 1.4422495703074083  # 3^{1/3}
_INV_PI_3_23 = 0.15302743219105738  # 3^{-2/3} / pi


def _airy_loop(z):
    # Ai(z) = (3^{-2/3}/pi) sum_k Gamma((k+1)/3) sin(2 pi (k+1)/3) (3^{1/3} z)^k / k!
    # terms with k = 2 (mod 3) vanish
    w = _C3 * z
    p = 1.0 + 0.0j  # w^k / k!
    total = 0.0 + 0.0j
    maxmag = 0.0
    suma = 0.0
    small = 0
    k = 0
    last = 0.0
    while k < 600:
        r = (k + 1) % 3
        if r != 0:
            g = math.gamma((k + 1) / 3.0)
            sv = _SQRT3_HALF if r == 1 else -_SQRT3_HALF
            term = g * sv * p
            total += term
            a = abs(term)
            last = a
            suma += a
            if a > maxmag:
                maxmag = a
            if a < 1e-16 * (abs(total) + 1e-300) and k > 3:
                small += 1
                if small >= 5:
                    break
            else:
                small = 0
        k += 1
        p = p * w / k
    # the power recurrence feeds ~k ulp of relative error into late terms
    err = _EPS * (2.0 * suma + 1.5 * k * maxmag) + last
    return _INV_PI_3_23 * total, _INV_PI_3_23 * err


def _sinpi_loop(z):
    # sin(pi z) with argument reduction so integer zeros are exact
    n = math.floor(z.real + 0.5)
    f = complex(z.real - n, z.imag)
    s = cmath.sin(math.pi * f)
    if int(n) % 2 != 0:
        s = -s
    return s


def _gamma_loop(z):
    # Gamma via exp(log-gamma); reflection for Re z <= 0.5
    if z.real > 0.5:
        v = cmath.exp(_loggamma_loop(z))
        return v, 8.0 * _EPS * abs(v) * (1.0 + abs(z))
    if abs(z.imag) > 300.0:
        # |Gamma| < e^{-pi|y|/2} here, far below double underflow; sinpi
        # would overflow before the quotient could round to it
        return complex(0.0, 0.0), 1.0e-200
    sp = _sinpi_loop(z)
    if sp.real == 0.0 and sp.imag == 0.0:
        return complex(math.inf, 0.0), math.inf
    v = math.pi / (sp * cmath.exp(_loggamma_loop(1.0 - z)))
    return v, 8.0 * _EPS * abs(v) * (1.0 + abs(z) + abs(z.imag) * math.pi)


# ---------------------------------------------------------------------------
# numba compilation
# ---------------------------------------------------------------------------

if USING_NUMBA:
    # rebind so the jitted functions see each other through module globals
    _loggamma_loop = njit(cache=True)(_loggamma_loop)
    _theta_loop = njit(cache=True)(_theta_loop)
    _em_loop = njit(cache=True)(_em_loop)
    _rs_loop = njit(cache=True)(_rs_loop)
    _profile_loop = njit(cache=True)(_profile_loop)
    _h7_loop = njit(cache=True)(_h7_loop)
    _j7_loop = njit(cache=True)(_j7_loop)
    _airy_loop = njit(cache=True)(_airy_loop)
    _sinpi_loop = njit(cache=True)(_sinpi_loop)
    _gamma_loop = njit(cache=True)(_gamma_loop)
    _loggamma_nb = _loggamma_loop
    _theta_nb = _theta_loop
    _em_nb = _em_loop
    _rs_nb = _rs_loop
    _profile_nb = _profile_loop
    _h7_nb = _h7_loop
    _j7_nb = _j7_loop
    _airy_nb = _airy_loop
    _sinpi_nb = _sinpi_loop
    _gamma_nb = _gamma_loop

    @njit(cache=True, parallel=True)
    def _em_batch_nb(ss, n_cut, target):
        n = ss.shape[0]
        vals = np.empty(n, dtype=np.complex128)
        errs = np.empty(n, dtype=np.float64)
        ms = np.empty(n, dtype=np.int64)
        for i in prange(n):
            v, e, m = _em_nb(ss[i], n_cut, target)
            vals[i] = v
            errs[i] = e
            ms[i] = m
        return vals, errs, ms

    @njit(cache=True, parallel=True)
    def _rs_batch_nb(ts):
        n = ts.shape[0]
        zs = np.empty(n, dtype=np.float64)
        errs = np.empty(n, dtype=np.float64)
        mm = np.empty(n, dtype=np.int64)
        xis = np.empty(n, dtype=np.float64)
        ths = np.empty(n, dtype=np.float64)
        for i in prange(n):
            z, e, m, xi, phi, main, corr, th = _rs_nb(ts[i])
            zs[i] = z
            errs[i] = e
            mm[i] = m
            xis[i] = xi
            ths[i] = th
        return zs, errs, mm, xis, ths

    @njit(cache=True, parallel=True)
    def _gallery_batch_nb(which, zz):
        n = zz.shape[0]
        vals = np.empty(n, dtype=np.complex128)
        errs = np.empty(n, dtype=np.float64)
        for i in prange(n):
            if which == 0:
                v, e = _h7_nb(zz[i])
            elif which == 1:
                v, e = _j7_nb(zz[i])
            elif which == 2:
                v, e = _airy_nb(zz[i])
            else:
                v, e = _gamma_nb(zz[i])
            vals[i] = v
            errs[i] = e
        return vals, errs


# ---------------------------------------------------------------------------
# numpy implementations
# ---------------------------------------------------------------------------


def _em_tail_np(ss, n_cut, target):
    """Vectorized Euler-Maclaurin tail terms, bound and m for an array of s."""
    s = ss
    sig = s.real
    lnN = math.log(n_cut)
    npow = np.exp((1.0 - s) * lnN)
    total = 0.5 * np.exp(-s * lnN) + npow / (s - 1.0)
    tk = EM_COEFF[1] * (npow / (n_cut * n_cut)) * s
    bound = np.full(s.shape, np.inf)
    ms = np.full(s.shape, EM_MAX_M, dtype=np.int64)
    active = np.ones(s.shape, dtype=bool)
    k = 1
    while True:
        total = np.where(active, total + tk, total)
        tnext = tk * ((EM_COEFF[k + 1] / EM_COEFF[k]) * (s + (2 * k - 1)) * (s + 2 * k) / (n_cut * n_cut))
        denom = sig + 2 * k + 1.0
        b = np.where(denom > 0.0, np.abs(tnext) * np.abs(s + (2 * k + 1)) / np.where(denom > 0, denom, 1.0), np.inf)
        newly = active & (b <= target) & (denom > 0.0)
        bound[newly] = b[newly]
        ms[newly] = k
        active &= ~newly
        if k >= EM_MAX_M:
            bound[active] = b[active]
            ms[active] = k
            break
        if not active.any():
            break
        tk = tnext
        k += 1
    return total, bound, ms


def _em_batch_np(ss, n_cut, target):
    ss = np.ascontiguousarray(ss, dtype=np.complex128)
    n = ss.shape[0]
    vals = np.zeros(n, dtype=np.complex128)
    sumabs = np.zeros(n)
    sumlnabs = np.zeros(n)
    lnn = np.log(np.arange(1, n_cut, dtype=np.float64))
    chunk = max(1, (1 << 22) // max(n_cut, 1))
    for i0 in range(0, n, chunk):
        sl = slice(i0, min(n, i0 + chunk))
        e = np.exp(-ss[sl, None] * lnn[None, :])
        vals[sl] = e.sum(axis=1)
        ae = np.abs(e)
        sumabs[sl] = ae.sum(axis=1)
        sumlnabs[sl] = ae @ lnn
    tail, bound, ms = _em_tail_np(ss, n_cut, target)
    errs = bound + _EPS * (4.0 * (sumabs + 1.0 + np.abs(tail)) + np.abs(ss.imag) * sumlnabs)
    return vals + tail, errs, ms


def _em_np_scalar(s, n_cut, target):
    if n_cut <= 600:
        return _em_loop(s, n_cut, target)
    vals, errs, ms = _em_batch_np(np.array([s], dtype=np.complex128), n_cut, target)
    return vals[0], errs[0], int(ms[0])


def _rs_np_scalar(t):
    a = math.sqrt(t / (2.0 * math.pi))
    m = int(a)
    xi = a - m
    th = _theta_loop(t)
    ns = np.arange(1, m + 1, dtype=np.float64)
    lnn = np.log(ns)
    rsq = 1.0 / np.sqrt(ns)
    main = 2.0 * float(np.cos(th - t * lnn) @ rsq)
    sab = float(rsq.sum())
    phi = xi - xi * xi + 0.0625
    u1 = xi - 0.25
    u3 = xi - 0.75
    pi2 = math.pi * math.pi
    if abs(u1) < 1e-3:
        h = 0.5 - u1 + (pi2 / 4.0) * u1 * u1 - (pi2 / 6.0) * u1 ** 3
    elif abs(u3) < 1e-3:
        h = 0.5 + u3 + (pi2 / 4.0) * u3 * u3 + (pi2 / 6.0) * u3 ** 3
    else:
        h = math.cos(2.0 * math.pi * phi) / math.cos(2.0 * math.pi * xi)
    corr = h * (t / (2.0 * math.pi)) ** (-0.25)
    if m % 2 == 0:
        corr = -corr
    err = RS_ERR_C * t ** (-0.75) + _EPS * (abs(th) + t * math.log(m + 1.0)) * 2.0 * sab
    return main + corr, err, m, xi, phi, main, corr, th


def _rs_batch_np(ts):
    n = len(ts)
    zs = np.empty(n)
    errs = np.empty(n)
    mm = np.empty(n, dtype=np.int64)
    xis = np.empty(n)
    ths = np.empty(n)
    for i in range(n):
        z, e, m, xi, phi, main, corr, th = _rs_np_scalar(float(ts[i]))
        zs[i] = z
        errs[i] = e
        mm[i] = m
        xis[i] = xi
        ths[i] = th
    return zs, errs, mm, xis, ths


def _profile_np(sig, t, lnn, cosv, sinv, target):
    a = np.exp(-sig * lnn)
    re = float(a @ cosv)
    im = -float(a @ sinv)
    sumabs = float(a.sum())
    sumlnabs = float(a @ lnn)
    n_cut = lnn.shape[0] + 1
    s = complex(sig, t)
    tail, bound, ms = _em_tail_np(np.array([s]), n_cut, target)
    v = complex(re, im) + complex(tail[0])
    return v, float(bound[0]) + _EPS * (4.0 * sumabs + abs(t) * sumlnabs)


def _loggamma_batch_np(zz):
    z = np.array(zz, dtype=np.complex128, copy=True)
    shift = np.zeros_like(z)
    need = (np.abs(z) < 12.0) | (z.real < 0.5)
    it = 0
    while need.any() and it < 200:
        shift[need] += np.log(z[need])
        z[need] += 1.0
        need = (np.abs(z) < 12.0) | (z.real < 0.5)
        it += 1
    r = (z - 0.5) * np.log(z) - z + 0.5 * LN2PI
    w = 1.0 / z
    z2 = w * w
    acc = np.zeros_like(z)
    for i in range(1, 16):
        acc += STIRLING[i] * w
        w = w * z2
    return r + acc - shift


def _sinpi_batch_np(zz):
    z = np.asarray(zz, dtype=np.complex128)
    n = np.floor(z.real + 0.5)
    f = (z.real - n) + 1j * z.imag
    s = np.sin(np.pi * f)
    odd = (n.astype(np.int64) % 2) != 0
    s[odd] = -s[odd]
    return s


def _h7_batch_np(zz):
    z = np.asarray(zz, dtype=np.complex128)
    z2 = z * z
    vals = (((128.0 * z2 - 1344.0) * z2 + 3360.0) * z2 - 1680.0) * z
    a = np.abs(z)
    a2 = a * a
    mag = (((128.0 * a2 + 1344.0) * a2 + 3360.0) * a2 + 1680.0) * a
    return vals, 8.0 * _EPS * mag


def _j7_batch_np(zz):
    z = np.asarray(zz, dtype=np.complex128)
    w = 0.5 * z
    w2 = w * w
    term = w ** 7 / 5040.0
    total = term.copy()
    maxmag = np.abs(term)
    small = np.zeros(z.shape, dtype=np.int64)
    done = np.zeros(z.shape, dtype=bool)
    last = np.abs(term)
    for k in range(1, 501):
        term = -term * w2 / (k * (k + 7.0))
        upd = ~done
        total[upd] += term[upd]
        a = np.abs(term)
        last[upd] = a[upd]
        np.maximum(maxmag, np.where(upd, a, 0.0), out=maxmag)
        tiny = a < 1e-16 * (np.abs(total) + 1e-300)
        small = np.where(tiny & upd, small + 1, 0)
        done |= small >= 5
        if done.all():
            break
    return total, 4.0 * _EPS * maxmag + last


def _airy_batch_np(zz):
    z = np.asarray(zz, dtype=np.complex128)
    w = _C3 * z
    p = np.ones(z.shape, dtype=np.complex128)
    total = np.zeros(z.shape, dtype=np.complex128)
    maxmag = np.zeros(z.shape)
    suma = np.zeros(z.shape)
    small = np.zeros(z.shape, dtype=np.int64)
    done = np.zeros(z.shape, dtype=bool)
    last = np.zeros(z.shape)
    kdone = np.zeros(z.shape)
    k = 0
    while k < 600 and not done.all():
        r = (k + 1) % 3
        if r != 0:
            g = math.gamma((k + 1) / 3.0)
            sv = _SQRT3_HALF if r == 1 else -_SQRT3_HALF
            term = (g * sv) * p
            upd = ~done
            total[upd] += term[upd]
            a = np.abs(term)
            last[upd] = a[upd]
            suma[upd] += a[upd]
            kdone[upd] = k
            np.maximum(maxmag, np.where(upd, a, 0.0), out=maxmag)
            if k > 3:
                tiny = a < 1e-16 * (np.abs(total) + 1e-300)
                small = np.where(tiny & upd, small + 1, 0)
                done |= small >= 5
        k += 1
        p = p * w / k
    err = _EPS * (2.0 * suma + 1.5 * kdone * maxmag) + last
    return _INV_PI_3_23 * total, _INV_PI_3_23 * err


def _gamma_batch_np(zz):
    z = np.asarray(zz, dtype=np.complex128)
    vals = np.empty(z.shape, dtype=np.complex128)
    errs = np.empty(z.shape)
    right = z.real > 0.5
    if right.any():
        v = np.exp(_loggamma_batch_np(z[right]))
        vals[right] = v
        errs[right] = 8.0 * _EPS * np.abs(v) * (1.0 + np.abs(z[right]))
    left = ~right
    if left.any():
        zl = z[left]
        deep = np.abs(zl.imag) > 300.0
        sp = _sinpi_batch_np(np.where(deep, 0.25, zl))
        gg = np.exp(_loggamma_batch_np(1.0 - np.where(deep, 0.25, zl)))
        with np.errstate(divide="ignore", invalid="ignore"):
            v = math.pi / (sp * gg)
        v[sp == 0] = np.inf
        v[deep] = 0.0
        e = 8.0 * _EPS * np.abs(v) * (1.0 + np.abs(zl) + np.abs(zl.imag) * math.pi)
        e[deep] = 1.0e-200
        vals[left] = v
        errs[left] = e
    return vals, errs


def _gallery_batch_dispatch_np(which, zz):
    if which == 0:
        return _h7_batch_np(zz)
    if which == 1:
        return _j7_batch_np(zz)
    if which == 2:
        return _airy_batch_np(zz)
    return _gamma_batch_np(zz)


# ---------------------------------------------------------------------------
# dispatched public names
# ---------------------------------------------------------------------------

if USING_NUMBA:
    loggamma_scalar = _loggamma_nb
    theta_fast = _theta_nb
    em_scalar = _em_nb
    em_batch = _em_batch_nb
    rs_scalar = _rs_nb
    rs_batch = _rs_batch_nb

    def profile_eval(sig, t, lnn, cosv, sinv, target=1e-12):
        return _profile_nb(sig, t, lnn, cosv, sinv, target)

    def gallery_batch(which, zz):
        return _gallery_batch_nb(which, np.ascontiguousarray(zz, dtype=np.complex128))

    h7_scalar = _h7_nb
    j7_scalar = _j7_nb
    airy_scalar = _airy_nb
    gamma_scalar = _gamma_nb
    sinpi_scalar = _sinpi_nb
else:
    loggamma_scalar = _loggamma_loop
    theta_fast = _theta_loop
    em_scalar = _em_np_scalar
    em_batch = _em_batch_np
    rs_scalar = _rs_np_scalar
    rs_batch = _rs_batch_np

    def profile_eval(sig, t, lnn, cosv, sinv, target=1e-12):
        return _profile_np(sig, t, lnn, cosv, sinv, target)

    def gallery_batch(which, zz):
        return _gallery_batch_dispatch_np(which, np.asarray(zz, dtype=np.complex128))

    h7_scalar = _h7_loop
    j7_scalar = _j7_loop
    airy_scalar = _airy_loop
    gamma_scalar = _gamma_loop
    sinpi_scalar = _sinpi_loop

loggamma_batch = _loggamma_batch_np
sinpi_batch = _sinpi_batch_np


def warmup():
    """Trigger jit compilation of every dispatched kernel (no-op on numpy)."""
    em_scalar(complex(0.5, 30.0), 49, 1e-12)
    em_batch(np.array([complex(2.0, 1.0)]), 12, 1e-12)
    rs_scalar(100.0)
    rs_batch(np.array([100.0]))
    theta_fast(30.0)
    lnn = np.log(np.arange(1, 40, dtype=np.float64))
    profile_eval(1.0, 30.0, lnn, np.cos(30.0 * lnn), np.sin(30.0 * lnn))
    zz = np.array([complex(1.0, 1.0)])
    for w in range(4):
        gallery_batch(w, zz)
    gamma_scalar(complex(-1.5, 0.5))
