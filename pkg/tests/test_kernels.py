"""Backend equivalence: the numba kernels and the pure-numpy fallback
(selected by MFVC_BACKEND) must produce the same numbers."""

import json
import os
import subprocess
import sys

PROBE = r"""
import json, math
import numpy as np
from mfvc import _kernels

out = {"backend": _kernels.backend_name()}

x, y, steps, defect, drift, status = _kernels.transport(
    "local", 4, 3, 0.1, 1e-3,
    complex(math.sqrt(1e-3 / 0.1)), complex(math.sqrt(1e-3 / 0.1)),
    2 * math.pi * (1/3 + 1/2), 0.0,
)
out["x"] = [x.real, x.imag]
out["status"] = status

zx = np.array([0.3 + 0.1j, 0.5 - 0.2j, 0.05 + 0.4j])
zy = np.array([0.2 - 0.3j, 0.1 + 0.1j, 0.6 + 0.0j])
X, Y, ok = _kernels.newton_enumerate("loop", 3, 3, 0.1, zx, zy, iters=60, tol=1e-12)
out["newton"] = [[z.real, z.imag] for z, good in zip(X, ok) if good]
out["n_ok"] = int(ok.sum())
print(json.dumps(out))
"""


def run_probe(backend):
    env = dict(os.environ, MFVC_BACKEND=backend)
    proc = subprocess.run([sys.executable, "-c", PROBE], capture_output=True,
                          text=True, env=env)
    assert proc.returncode == 0, proc.stderr
    return json.loads(proc.stdout)


def test_backends_agree():
    numpy_out = run_probe("numpy")
    auto_out = run_probe("auto")
    assert numpy_out["backend"] == "numpy"
    assert numpy_out["status"] == auto_out["status"] == 0
    assert abs(numpy_out["x"][0] - auto_out["x"][0]) < 1e-9
    assert abs(numpy_out["x"][1] - auto_out["x"][1]) < 1e-9
    assert numpy_out["n_ok"] == auto_out["n_ok"]
    for a, b in zip(sorted(numpy_out["newton"]), sorted(auto_out["newton"])):
        assert abs(a[0] - b[0]) < 1e-8 and abs(a[1] - b[1]) < 1e-8


def test_numpy_backend_passes_local_model_check():
    env = dict(os.environ, MFVC_BACKEND="numpy")
    code = (
        "from mfvc.families import FamilySpec\n"
        "from mfvc.transport import verify_local_model\n"
        "r = verify_local_model(FamilySpec('loop', 4, 3), 1, 1, 0.0)\n"
        "assert r['ok'], r\n"
        "print('ok')\n"
    )
    proc = subprocess.run([sys.executable, "-c", code], capture_output=True,
                          text=True, env=env)
    assert proc.returncode == 0, proc.stderr
    assert proc.stdout.strip() == "ok"
