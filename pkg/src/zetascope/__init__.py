"""zetascope: Riemann zeta on and off the critical line, with x-ray plots.

Evaluation (Euler-Maclaurin, Riemann-Siegel), Gram points and Hardy Z,
critical-line zero location and counting, Gram's law / Rosser's rule audits,
and level-set tracing of Re f = 0 / Im f = 0 for zeta and a small gallery
of special functions.
"""

from .backend import BACKEND, USING_NUMBA
from .engine import (
    ConvergenceError,
    DomainError,
    EvalResult,
    EulerMaclaurinParams,
    RangeError,
    RSDecomposition,
    hardy_z,
    log_gamma,
    riemann_siegel_z,
    theta,
    zeta,
    zeta_critical,
    zeta_euler_maclaurin,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "USING_NUMBA",
    "ConvergenceError",
    "DomainError",
    "EvalResult",
    "EulerMaclaurinParams",
    "RangeError",
    "RSDecomposition",
    "hardy_z",
    "log_gamma",
    "riemann_siegel_z",
    "theta",
    "zeta",
    "zeta_critical",
    "zeta_euler_maclaurin",
    "__version__",
]
