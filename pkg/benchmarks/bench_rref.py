"""Compare the compiled and pure-Python row-reduction kernels.

Two views: the kernels head to head on seeded random integer matrices
(outputs asserted identical), and the package end to end on a real
cohomology workload with the kernel forced each way via DERCON_PURE_PYTHON.

Run from the repository root:  python3 benchmarks/bench_rref.py
"""

import os
import random
import statistics
import subprocess
import sys
import time

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from dercon.exactlin import _kernel_py  # noqa: E402

try:
    from dercon.exactlin import _rowreduce
except ImportError:
    _rowreduce = None


def random_matrix(rng, nrows, ncols, density, lo=-9, hi=9):
    return [
        [rng.randint(lo, hi) if rng.random() < density else 0 for _ in range(ncols)]
        for _ in range(nrows)
    ]


def time_kernel(kernel, mats, repeats=3):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        out = [kernel.rref_int(m) for m in mats]
        dt = time.perf_counter() - t0
        best = dt if best is None else min(best, dt)
    return best, out


def kernel_bench():
    rng = random.Random(20260822)
    cases = [
        ("dense 40x60", [random_matrix(rng, 40, 60, 0.9) for _ in range(8)]),
        ("sparse 120x160", [random_matrix(rng, 120, 160, 0.08) for _ in range(4)]),
        ("tall 200x50", [random_matrix(rng, 200, 50, 0.3) for _ in range(4)]),
    ]
    print("== rref_int kernels on seeded random integer matrices ==")
    for name, mats in cases:
        t_py, out_py = time_kernel(_kernel_py, mats)
        line = f"{name:16s} python {t_py * 1e3:8.1f} ms"
        if _rowreduce is not None:
            t_cy, out_cy = time_kernel(_rowreduce, mats)
            assert out_py == out_cy, f"kernel outputs differ on {name}"
            line += f"   cython {t_cy * 1e3:8.1f} ms   speedup {t_py / t_cy:5.2f}x"
        print(line)


WORKLOAD = """
from dercon import catalog
from dercon.dgcore import DgaSlices, cohomology
from dercon.exactlin import KERNEL
coh = cohomology(DgaSlices(catalog.pagoda_oracle_dga(3), -8, 1, 32))
total = sum(coh.dim(k) for k in coh.nonzero_keys())
print(KERNEL, total)
"""


def package_bench():
    print("== package end to end: pagoda n=3 quotient cohomology window ==")
    rows = []
    for env_val, label in ((None, "cython"), ("1", "python")):
        env = dict(os.environ)
        env.pop("DERCON_PURE_PYTHON", None)
        if env_val:
            env["DERCON_PURE_PYTHON"] = env_val
        times = []
        tag = None
        for _ in range(3):
            t0 = time.perf_counter()
            r = subprocess.run(
                [sys.executable, "-c", WORKLOAD], env=env, capture_output=True, text=True
            )
            times.append(time.perf_counter() - t0)
            if r.returncode:
                print(r.stderr)
                raise SystemExit(1)
            tag = r.stdout.split()
        rows.append((label, tag, statistics.median(times)))
    for label, tag, t in rows:
        print(f"requested {label:7s} used {tag[0]:7s} dims-total {tag[1]:>4s}   {t:6.2f} s")


if __name__ == "__main__":
    kernel_bench()
    package_bench()
