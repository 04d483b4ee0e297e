"""Benchmark the numba kernels against the pure-numpy fallback.

Runs each workload in a subprocess with MFVC_BACKEND forced, so both paths
are timed from a cold interpreter (numba timings are reported after a
warm-up call to exclude compilation).

    python3 benchmarks/bench_kernels.py
"""

import json
import os
import subprocess
import sys

WORKLOAD = r"""
import json, math, time
import numpy as np
from mfvc import _kernels

def bench_transport():
    # the acceptance sweep: loop(4,6) grid, s in {-2..2}
    r = math.sqrt(1e-3 / 0.1)
    jobs = []
    for l in range(3):
        for m in range(5):
            theta = 2 * math.pi * (l / 3 + m / 5)
            for s in (-2.0, -1.0, 0.0, 1.0, 2.0):
                ax = 2 * math.pi * l / 3
                ay = 2 * math.pi * m / 5
                x0 = r * math.exp(s) * complex(math.cos(ax), math.sin(ax))
                y0 = r * math.exp(-s) * complex(math.cos(ay), math.sin(ay))
                jobs.append((x0, y0, theta))
    def run():
        for x0, y0, theta in jobs:
            _kernels.transport("local", 4, 6, 0.1, 1e-3, x0, y0, theta, 0.0)
    run()  # warm-up / jit compile
    t0 = time.perf_counter()
    run()
    return time.perf_counter() - t0, len(jobs)

def bench_newton():
    rng = np.random.default_rng(0)
    n = 4000
    zx = (rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)).astype(np.complex128)
    zy = (rng.uniform(-1, 1, n) + 1j * rng.uniform(-1, 1, n)).astype(np.complex128)
    _kernels.newton_enumerate("loop", 4, 4, 0.1, zx[:10], zy[:10])  # warm-up
    t0 = time.perf_counter()
    X, Y, ok = _kernels.newton_enumerate("loop", 4, 4, 0.1, zx, zy)
    return time.perf_counter() - t0, int(ok.sum())

t_tr, n_tr = bench_transport()
t_nw, n_nw = bench_newton()
print(json.dumps({
    "backend": _kernels.backend_name(),
    "transport_s": t_tr, "transport_jobs": n_tr,
    "newton_s": t_nw, "newton_converged": n_nw,
}))
"""


def run(backend):
    env = dict(os.environ, MFVC_BACKEND=backend)
    proc = subprocess.run([sys.executable, "-c", WORKLOAD], capture_output=True,
                          text=True, env=env)
    if proc.returncode != 0:
        raise RuntimeError(proc.stderr)
    return json.loads(proc.stdout)


def main():
    rows = []
    for backend in ("numpy", "numba"):
        try:
            rows.append(run(backend))
        except RuntimeError as exc:
            print(f"{backend}: unavailable ({exc})")
    print(f"{'backend':<8} {'transport (75 jobs)':>20} {'newton (4000 seeds)':>20}")
    for r in rows:
        print(f"{r['backend']:<8} {r['transport_s']:>18.3f}s {r['newton_s']:>18.3f}s")
    if len(rows) == 2:
        print(f"{'speedup':<8} {rows[0]['transport_s'] / rows[1]['transport_s']:>18.1f}x "
              f"{rows[0]['newton_s'] / rows[1]['newton_s']:>18.1f}x")
        assert rows[0]["newton_converged"] == rows[1]["newton_converged"]


if __name__ == "__main__":
    main()
