"""Numeric kernels: parallel-transport integration and Newton enumeration.

The hot inner loops are compiled with numba when it is available; setting
MFVC_BACKEND=numpy forces the pure-numpy/python fallback (the same
algorithms, uncompiled), MFVC_BACKEND=numba insists on the compiled path.
`benchmarks/bench_kernels.py` compares the two.
"""

import math
import os

import numpy as np

_BACKEND = os.environ.get("MFVC_BACKEND", "auto").lower()
_HAVE_NUMBA = False
if _BACKEND in ("auto", "numba"):
    try:
        import numba

        _HAVE_NUMBA = True
    except ImportError:
        if _BACKEND == "numba":
            raise RuntimeError("MFVC_BACKEND=numba but numba is not importable")

if os.environ.get("THREADS") and _HAVE_NUMBA:
    try:
        numba.set_num_threads(max(1, int(os.environ["THREADS"])))
    except Exception:
        pass


def backend_name():
    return "numba" if _HAVE_NUMBA else "numpy"


def _jit(f):
    if _HAVE_NUMBA:
        return numba.njit(cache=True)(f)
    return f


FAMILY_CODES = {"loop": 0, "chain": 1, "bp": 2, "local": 3}


@_jit
def _w_and_grad(code, p, q, eps, x, y):
    """(W, Wx, Wy) of the resonant perturbation, or of the local model."""
    if code == 0:  # x^p y + x y^q - eps x y
        W = x ** p * y + x * y ** q - eps * x * y
        Wx = p * x ** (p - 1) * y + y ** q - eps * y
        Wy = x ** p + q * x * y ** (q - 1) - eps * x
    elif code == 1:  # x^p + x y^q - eps x y
        W = x ** p + x * y ** q - eps * x * y
        Wx = p * x ** (p - 1) + y ** q - eps * y
        Wy = q * x * y ** (q - 1) - eps * x
    elif code == 2:  # x^p + y^q - eps x y
        W = x ** p + y ** q - eps * x * y
        Wx = p * x ** (p - 1) - eps * y
        Wy = q * y ** (q - 1) - eps * x
    else:  # -eps x y
        W = -eps * x * y
        Wx = -eps * y
        Wy = -eps * x
    return W, Wx, Wy


@_jit
def _hessian(code, p, q, eps, x, y):
    if code == 0:
        hxx = p * (p - 1) * x ** (p - 2) * y
        hxy = p * x ** (p - 1) + q * y ** (q - 1) - eps
        hyy = q * (q - 1) * x * y ** (q - 2)
    elif code == 1:
        hxx = p * (p - 1) * x ** (p - 2)
        hxy = q * y ** (q - 1) - eps
        hyy = q * (q - 1) * x * y ** (q - 2)
    elif code == 2:
        hxx = p * (p - 1) * x ** (p - 2)
        hxy = -eps + 0j
        hyy = q * (q - 1) * y ** (q - 2)
    else:
        hxx = 0j
        hxy = -eps + 0j
        hyy = 0j
    return hxx, hxy, hyy


def gradient_and_hessian(family, p, q, eps, x, y):
    code = FAMILY_CODES[family]
    W, Wx, Wy = _w_and_grad(code, p, q, eps, complex(x), complex(y))
    hxx, hxy, hyy = _hessian(code, p, q, eps, complex(x), complex(y))
    return W, Wx, Wy, hxx, hxy, hyy


# ---------------------------------------------------------------------------
# Newton enumeration of critical points


@_jit
def _newton_scalar(code, p, q, eps, x, y, iters, tol):
    for _ in range(iters):
        _, wx, wy = _w_and_grad(code, p, q, eps, x, y)
        if abs(wx) < tol and abs(wy) < tol:
            return x, y, True
        hxx, hxy, hyy = _hessian(code, p, q, eps, x, y)
        det = hxx * hyy - hxy * hxy
        if abs(det) < 1e-14:
            return x, y, False
        dx = (wx * hyy - wy * hxy) / det
        dy = (wy * hxx - wx * hxy) / det
        x = x - dx
        y = y - dy
        if abs(x) > 1e6 or abs(y) > 1e6:
            return x, y, False
    _, wx, wy = _w_and_grad(code, p, q, eps, x, y)
    return x, y, abs(wx) < tol and abs(wy) < tol


@_jit
def _newton_batch_loop(code, p, q, eps, zx, zy, iters, tol):
    n = zx.shape[0]
    X = np.empty(n, dtype=np.complex128)
    Y = np.empty(n, dtype=np.complex128)
    ok = np.zeros(n, dtype=np.bool_)
    for k in range(n):
        x, y, good = _newton_scalar(code, p, q, eps, zx[k], zy[k], iters, tol)
        X[k] = x
        Y[k] = y
        ok[k] = good
    return X, Y, ok


def _newton_batch_numpy(code, p, q, eps, zx, zy, iters, tol):
    """Vectorized fallback: whole-array Newton with masking."""
    x = zx.astype(np.complex128).copy()
    y = zy.astype(np.complex128).copy()
    active = np.ones(x.shape, dtype=bool)
    for _ in range(iters):
        _, wx, wy = _w_and_grad(code, p, q, eps, x, y)
        done = (np.abs(wx) < tol) & (np.abs(wy) < tol)
        active &= ~done
        if not active.any():
            break
        hxx, hxy, hyy = _hessian(code, p, q, eps, x, y)
        det = hxx * hyy - hxy * hxy
        bad = np.abs(det) < 1e-14
        det = np.where(bad, 1.0, det)
        dx = np.where(active & ~bad, (wx * hyy - wy * hxy) / det, 0.0)
        dy = np.where(active & ~bad, (wy * hxx - wx * hxy) / det, 0.0)
        x = x - dx
        y = y - dy
        diverged = (np.abs(x) > 1e6) | (np.abs(y) > 1e6)
        active &= ~diverged
    _, wx, wy = _w_and_grad(code, p, q, eps, x, y)
    ok = (np.abs(wx) < tol) & (np.abs(wy) < tol)
    return x, y, ok


def newton_enumerate(family, p, q, eps, zx, zy, iters=80, tol=1e-10):
    code = FAMILY_CODES[family]
    if _HAVE_NUMBA:
        return _newton_batch_loop(code, p, q, eps, zx, zy, iters, tol)
    return _newton_batch_numpy(code, p, q, eps, zx, zy, iters, tol)


# ---------------------------------------------------------------------------
# parallel transport


@_jit
def _rhs(code, p, q, eps, delta, x, y, t):
    # c(t) = -delta * exp(i t); dot c = -i delta exp(i t)
    cdot = -delta * 1j * (math.cos(t) + 1j * math.sin(t))
    _, wx, wy = _w_and_grad(code, p, q, eps, x, y)
    norm2 = (wx * wx.conjugate()).real + (wy * wy.conjugate()).real
    fx = cdot * wx.conjugate() / norm2
    fy = cdot * wy.conjugate() / norm2
    return fx, fy, norm2


@_jit
def _rk4_step(code, p, q, eps, delta, x, y, t, h):
    k1x, k1y, n1 = _rhs(code, p, q, eps, delta, x, y, t)
    k2x, k2y, n2 = _rhs(code, p, q, eps, delta, x + 0.5 * h * k1x, y + 0.5 * h * k1y, t + 0.5 * h)
    k3x, k3y, n3 = _rhs(code, p, q, eps, delta, x + 0.5 * h * k2x, y + 0.5 * h * k2y, t + 0.5 * h)
    k4x, k4y, n4 = _rhs(code, p, q, eps, delta, x + h * k3x, y + h * k3y, t + h)
    nx = x + h * (k1x + 2 * k2x + 2 * k3x + k4x) / 6.0
    ny = y + h * (k1y + 2 * k2y + 2 * k3y + k4y) / 6.0
    nmin = min(min(n1, n2), min(n3, n4))
    return nx, ny, nmin


@_jit
def _project_to_fibre(code, p, q, eps, delta, x, y, t):
    # Newton in the gradient direction: move z by lam * conj(grad W)
    target = -delta * (math.cos(t) + 1j * math.sin(t))
    for _ in range(3):
        W, wx, wy = _w_and_grad(code, p, q, eps, x, y)
        norm2 = (wx * wx.conjugate()).real + (wy * wy.conjugate()).real
        if norm2 < 1e-16:
            break
        lam = (target - W) / norm2
        x = x + lam * wx.conjugate()
        y = y + lam * wy.conjugate()
    return x, y


@_jit
def _transport(code, p, q, eps, delta, x0, y0, t0, t1, step_tol, max_steps, project):
    """Adaptive RK4 with step doubling and optional per-step projection.

    Returns (x, y, steps, max_defect, max_drift, status); status 0 = ok,
    1 = near-critical abort, 2 = step budget exhausted."""
    x, y = x0, y0
    t = t0
    span = t1 - t0
    if span == 0.0:
        return x, y, 0, 0.0, 0.0, 0
    h = span / 64.0
    steps = 0
    max_defect = 0.0
    max_drift = 0.0
    r0 = abs(x0)
    while (span > 0 and t < t1) or (span < 0 and t > t1):
        if (span > 0 and t + h > t1) or (span < 0 and t + h < t1):
            h = t1 - t
        x1, y1, n1 = _rk4_step(code, p, q, eps, delta, x, y, t, h)
        xa, ya, n2 = _rk4_step(code, p, q, eps, delta, x, y, t, 0.5 * h)
        x2, y2, n3 = _rk4_step(code, p, q, eps, delta, xa, ya, t + 0.5 * h, 0.5 * h)
        if min(n1, min(n2, n3)) < 1e-16:
            return x, y, steps, max_defect, max_drift, 1
        err = max(abs(x1 - x2), abs(y1 - y2))
        if err > step_tol and abs(h) > 1e-13:
            h = 0.5 * h
            continue
        x, y = x2, y2
        t = t + h
        if project:
            x, y = _project_to_fibre(code, p, q, eps, delta, x, y, t)
        W, wx, wy = _w_and_grad(code, p, q, eps, x, y)
        target = -delta * (math.cos(t) + 1j * math.sin(t))
        defect = abs(W - target)
        if defect > max_defect:
            max_defect = defect
        drift = abs(abs(x) - r0)
        if drift > max_drift:
            max_drift = drift
        steps += 1
        if steps >= max_steps:
            return x, y, steps, max_defect, max_drift, 2
        if err < 0.01 * step_tol:
            h = 2.0 * h
    return x, y, steps, max_defect, max_drift, 0


@_jit
def _transport_fixed(code, p, q, eps, delta, x0, y0, t0, t1, n_steps, project):
    x, y = x0, y0
    h = (t1 - t0) / n_steps
    t = t0
    for _ in range(n_steps):
        x, y, _ = _rk4_step(code, p, q, eps, delta, x, y, t, h)
        t = t + h
        if project:
            x, y = _project_to_fibre(code, p, q, eps, delta, x, y, t)
    return x, y


def transport(family, p, q, eps, delta, x0, y0, t0, t1,
              step_tol=1e-11, max_steps=100000, project=True):
    code = FAMILY_CODES[family]
    return _transport(code, p, q, eps, delta, complex(x0), complex(y0),
                      float(t0), float(t1), step_tol, max_steps, project)


def transport_fixed(family, p, q, eps, delta, x0, y0, t0, t1, n_steps, project=False):
    code = FAMILY_CODES[family]
    return _transport_fixed(code, p, q, eps, delta, complex(x0), complex(y0),
                            float(t0), float(t1), int(n_steps), project)
