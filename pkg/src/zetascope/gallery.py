"""Complex-function oracles for the x-ray tracer.

Each oracle evaluates one analytic function at scalar points or arrays,
returns values with error bounds, and declares its poles so the tracer can
treat the surrounding cells carefully.  All gallery functions are real on
the real axis, hence conjugate-symmetric.
"""

import math

import numpy as np

from . import kernels
from .engine import DomainError, EvalResult, RangeError, zeta, zeta_array

__all__ = [
    "FunctionOracle",
    "hermite7",
    "bessel_j7",
    "airy_ai",
    "gamma",
    "get_oracle",
    "ORACLE_NAMES",
]

J7_MAX_ABS = 60.0
AIRY_MAX_ABS = 20.0


def hermite7(z):
    """Hermite polynomial H_7 (physicists'), evaluated by Horner. Exact coefficients."""
    z = complex(z)
    z2 = z * z
    return (((128.0 * z2 - 1344.0) * z2 + 3360.0) * z2 - 1680.0) * z


def bessel_j7(z):
    """Bessel J_7 by its power series; valid for |z| <= 60."""
    z = complex(z)
    if abs(z) > J7_MAX_ABS:
        raise RangeError("bessel_j7: |z| = %g exceeds series domain %g" % (abs(z), J7_MAX_ABS))
    v, e = kernels.j7_scalar(z)
    return EvalResult(value=complex(v), error_bound=float(e), method="series")


def airy_ai(z):
    """Airy Ai by its power series; valid for |z| <= 20."""
    z = complex(z)
    if abs(z) > AIRY_MAX_ABS:
        raise RangeError("airy_ai: |z| = %g exceeds series domain %g" % (abs(z), AIRY_MAX_ABS))
    v, e = kernels.airy_scalar(z)
    return EvalResult(value=complex(v), error_bound=float(e), method="series")


def gamma(z):
    """Gamma function: exp(log_gamma) for Re z > 0.5, reflection otherwise."""
    z = complex(z)
    if z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real):
        raise DomainError("gamma: pole at nonpositive integer z = %g" % z.real)
    v, e = kernels.gamma_scalar(z)
    return EvalResult(value=complex(v), error_bound=float(e), method="series")


class FunctionOracle:
    """A named complex function with array evaluation and a declared pole set."""

    def __init__(self, identifier, scalar_fn, array_fn, pole_fn=None):
        self.identifier = identifier
        self._scalar = scalar_fn
        self._array = array_fn
        self._poles = pole_fn or (lambda rect: [])

    def __call__(self, z):
        return self._scalar(z)

    def eval_array(self, zz):
        """Evaluate on an ndarray of points; returns (values, error_bounds)."""
        zz = np.ascontiguousarray(zz, dtype=np.complex128)
        return self._array(zz)

    def poles_in(self, rect):
        """Poles inside the rectangle (sigma_min, sigma_max, t_min, t_max)."""
        return list(self._poles(rect))

    def derivative(self, z, h=None):
        """f'(z) by a symmetric difference; adequate for Newton projection."""
        z = complex(z)
        if h is None:
            h = 1e-6 * max(1.0, abs(z))
        fp = self._scalar(z + h)
        fm = self._scalar(z - h)
        if isinstance(fp, EvalResult):
            fp, fm = fp.value, fm.value
        return (fp - fm) / (2.0 * h)

    def derivative_array(self, zz, h=None):
        zz = np.ascontiguousarray(zz, dtype=np.complex128)
        if h is None:
            h = 1e-6 * np.maximum(1.0, np.abs(zz))
        vp, _ = self._array(zz + h)
        vm, _ = self._array(zz - h)
        return (vp - vm) / (2.0 * h)


def _zeta_scalar(z):
    return zeta(z)


def _zeta_array(zz):
    return zeta_array(zz)


def _zeta_poles(rect):
    smin, smax, tmin, tmax = rect
    if smin <= 1.0 <= smax and tmin <= 0.0 <= tmax:
        return [1.0 + 0.0j]
    return []


def _h7_array(zz):
    return kernels.gallery_batch(0, zz)


def _j7_array(zz):
    if np.abs(zz).max(initial=0.0) > J7_MAX_ABS:
        raise RangeError("bessel_j7: point beyond |z| = %g" % J7_MAX_ABS)
    return kernels.gallery_batch(1, zz)


def _airy_array(zz):
    if np.abs(zz).max(initial=0.0) > AIRY_MAX_ABS:
        raise RangeError("airy_ai: point beyond |z| = %g" % AIRY_MAX_ABS)
    return kernels.gallery_batch(2, zz)


def _gamma_array(zz):
    return kernels.gallery_batch(3, zz)


def _gamma_poles(rect):
    smin, smax, tmin, tmax = rect
    if tmin > 0.0 or tmax < 0.0 or smax < -0.5:
        return []
    lo = int(math.ceil(smin))
    return [complex(k) for k in range(min(0, int(math.floor(smax))), lo - 1, -1) if smin <= k <= smax]


def _h7_scalar_res(z):
    v = hermite7(z)
    a = abs(z)
    a2 = a * a
    mag = (((128.0 * a2 + 1344.0) * a2 + 3360.0) * a2 + 1680.0) * a
    return EvalResult(value=v, error_bound=8.0 * 2.2e-16 * mag, method="series")


def _make_polynomial_oracle(coeffs):
    """Oracle for a user polynomial, highest-degree coefficient first."""
    c = [complex(x) for x in coeffs]
    if not c:
        raise DomainError("user_polynomial: empty coefficient list")
    carr = np.array(c, dtype=np.complex128)
    aarr = np.abs(carr)

    def scalar(z):
        z = complex(z)
        v = complex(np.polyval(carr, z))
        mag = float(np.polyval(aarr, abs(z)))
        return EvalResult(value=v, error_bound=2.2e-16 * (2 * len(c)) * mag, method="series")

    def array(zz):
        v = np.polyval(carr, zz)
        mag = np.polyval(aarr, np.abs(zz))
        return v, 2.2e-16 * (2 * len(c)) * mag

    return FunctionOracle("user_polynomial", scalar, array)


ORACLE_NAMES = ("zeta", "hermite7", "bessel_j7", "airy_ai", "gamma", "user_polynomial")


def get_oracle(name, coeffs=None):
    """Look up an oracle by identifier; user_polynomial needs a coefficient list."""
    if name == "zeta":
        return FunctionOracle("zeta", _zeta_scalar, _zeta_array, _zeta_poles)
    if name == "hermite7":
        return FunctionOracle("hermite7", _h7_scalar_res, _h7_array)
    if name == "bessel_j7":
        return FunctionOracle("bessel_j7", bessel_j7, _j7_array)
    if name == "airy_ai":
        return FunctionOracle("airy_ai", airy_ai, _airy_array)
    if name == "gamma":
        return FunctionOracle("gamma", gamma, _gamma_array, _gamma_poles)
    if name == "user_polynomial":
        if coeffs is None:
            raise DomainError("user_polynomial oracle requires coefficients")
        return _make_polynomial_oracle(coeffs)
    raise DomainError("unknown oracle %r; choose from %s" % (name, ", ".join(ORACLE_NAMES)))
