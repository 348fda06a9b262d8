"""Shared fixtures: one session-wide backend warmup so JIT compilation
never lands inside a timed assertion."""

import numpy as np
import pytest


@pytest.fixture(scope="session", autouse=True)
def warm_backend():
    from zetascope import engine, gallery, gram

    engine.zeta(2.0)
    engine.zeta(0.5 + 300.0j)
    engine.zeta(-3.7 + 2.0j)
    engine.zeta_array(np.array([2.0 + 0.0j, 0.5 + 50.0j, -4.5 + 1.0j]))
    engine.riemann_siegel_z(250.0)
    engine.hardy_z(50.0)
    gram.z_values(np.array([50.0, 60.0]))
    for name in ("hermite7", "bessel_j7", "airy_ai", "gamma"):
        orc = gallery.get_oracle(name)
        orc(0.3 + 0.2j)
        orc.eval_array(np.array([0.1 + 0.1j, 1.0 - 0.5j]))
    yield


@pytest.fixture(scope="session")
def zeta_oracle(warm_backend):
    from zetascope import gallery

    return gallery.get_oracle("zeta")
