"""Compare the numba and pure-numpy backends on the hot numeric kernels.

Each backend is timed in its own child process (the backend is fixed at
import time by ZETASCOPE_BACKEND), then a side-by-side table is printed.
JIT compilation is excluded by a warmup pass before timing.

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import json
import os
import subprocess
import sys
import time


def _time(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def run_child(repeat):
    import numpy as np

    from zetascope import kernels
    from zetascope.engine import zeta_array
    from zetascope.gram import z_values

    kernels.warmup()
    rng = np.random.default_rng(20240817)

    results = {}

    ss = (rng.uniform(-0.5, 6.0, 20000) + 1j * rng.uniform(-60.0, 60.0, 20000))
    results["zeta_array 20k pts"] = _time(lambda: zeta_array(ss), repeat)

    ts = np.sort(rng.uniform(250.0, 5e4, 4000))
    results["riemann-siegel batch 4k"] = _time(lambda: kernels.rs_batch(ts), repeat)

    t2 = np.sort(rng.uniform(50.0, 195.0, 300))
    results["hardy-z euler-maclaurin 300"] = _time(lambda: z_values(t2), repeat)

    zz = (rng.uniform(-8, 8, 100000) + 1j * rng.uniform(-8, 8, 100000))
    results["bessel-j7 grid 100k"] = _time(lambda: kernels.gallery_batch(1, zz), repeat)

    zz2 = 0.25 + 1j * rng.uniform(500.0, 5e5, 100000)
    results["log-gamma batch 100k"] = _time(lambda: kernels.loggamma_batch(zz2), repeat)

    print(json.dumps(results))


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--child", action="store_true", help=argparse.SUPPRESS)
    args = ap.parse_args()
    if args.child:
        run_child(args.repeat)
        return
    rows = {}
    backends = ("numba", "numpy")
    for be in backends:
        env = dict(os.environ, ZETASCOPE_BACKEND=be)
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--child",
             "--repeat", str(args.repeat)],
            env=env, capture_output=True, text=True, check=True)
        rows[be] = json.loads(out.stdout.strip().splitlines()[-1])
    names = list(rows[backends[0]])
    width = max(len(n) for n in names)
    print("%-*s  %12s  %12s  %8s" % (width, "workload", "numba [s]", "numpy [s]", "speedup"))
    for n in names:
        a, b = rows["numba"][n], rows["numpy"][n]
        print("%-*s  %12.4f  %12.4f  %7.1fx" % (width, n, a, b, b / a if a > 0 else float("inf")))


if __name__ == "__main__":
    main()
