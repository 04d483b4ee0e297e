"""Symplectic parallel transport: numerical integration of the transport
ODE and verification of the closed-form neck solution.

The closed form is exact for the model fibration W = -eps*x*y on the neck;
the full perturbed fibration can also be transported (fibre membership is
monitored) but is never compared against the closed form, which is only an
approximation there.
"""

import math
from dataclasses import dataclass

from . import _kernels
from .aside import interior_args, phi_profile_end, theta_turns
from .families import FamilySpec


@dataclass
class TransportProblem:
    family: str          # loop | chain | bp | local
    p: int
    q: int
    eps: float
    delta: float
    x0: complex
    y0: complex
    t_start: float       # path c(t) = -delta e^{it}, t from t_start to t_end
    t_end: float
    step_tol: float = 1e-11
    max_steps: int = 100000
    project: bool = True


class TransportError(RuntimeError):
    pass


def integrate_parallel_transport(problem: TransportProblem):
    """Endpoint of parallel transport along the circular arc.

    Raises TransportError on a near-critical gradient or when the step
    budget is exhausted; otherwise the endpoint sits on the target fibre to
    within the projection tolerance (reported as `defect`)."""
    W0, _, _, _, _, _ = _kernels.gradient_and_hessian(
        problem.family, problem.p, problem.q, problem.eps, problem.x0, problem.y0
    )
    start_target = -problem.delta * complex(math.cos(problem.t_start), math.sin(problem.t_start))
    if abs(W0 - start_target) > 1e-12 * max(1.0, abs(start_target)):
        raise TransportError(f"initial point is not on the fibre: defect {abs(W0 - start_target):.3e}")
    x, y, steps, defect, drift, status = _kernels.transport(
        problem.family, problem.p, problem.q, problem.eps, problem.delta,
        problem.x0, problem.y0, problem.t_start, problem.t_end,
        problem.step_tol, problem.max_steps, problem.project,
    )
    if status == 1:
        raise TransportError("aborted near a critical point (|dW| too small)")
    if status == 2:
        raise TransportError("step budget exhausted")
    if defect > 1e-9:
        raise TransportError(f"fibre defect {defect:.3e} exceeds 1e-9")
    return {"x": x, "y": y, "steps": steps, "defect": defect, "modulus_drift": drift}


def local_start_point(spec: FamilySpec, l, m, s, delta, eps):
    """Start point on the neck hyperbola over the fibre at angle theta_{l,m}."""
    r = math.sqrt(delta / eps)
    xa, ya = interior_args(spec, l, m)
    ax = 2 * math.pi * float(xa)
    ay = 2 * math.pi * float(ya)
    x0 = r * math.exp(s) * complex(math.cos(ax), math.sin(ax))
    y0 = r * math.exp(-s) * complex(math.cos(ay), math.sin(ay))
    return x0, y0


def angle_error(z, phi):
    """|arg z - phi| up to full turns."""
    rot = z * complex(math.cos(-phi), math.sin(-phi))
    return abs(math.atan2(rot.imag, rot.real))


def verify_local_model(spec: FamilySpec, l, m, s, delta=1e-3, eps=0.1,
                       tol=1e-6, max_steps=100000):
    """Integrate the exact neck model and compare with the closed form.

    Returns a report with the achieved angle and modulus errors; `ok` is
    True when both are within tol."""
    if abs(s) > 3:
        raise ValueError("|s| <= 3 is required (the hyperbola leaves the neck)")
    x0, y0 = local_start_point(spec, l, m, s, delta, eps)
    theta = 2 * math.pi * float(theta_turns(spec, l, m))
    problem = TransportProblem("local", spec.p, spec.q, eps, delta, x0, y0,
                               theta, 0.0, max_steps=max_steps)
    res = integrate_parallel_transport(problem)
    phi = phi_profile_end(spec, l, m, s)
    r_expected = math.sqrt(delta / eps) * math.exp(s)
    a_err = angle_error(res["x"], phi)
    m_err = abs(abs(res["x"]) - r_expected)
    return {
        "l": l, "m": m, "s": s,
        "angle_error": a_err,
        "modulus_error": m_err,
        "modulus_drift": res["modulus_drift"],
        "steps": res["steps"],
        "defect": res["defect"],
        "ok": a_err <= tol and m_err <= tol and res["steps"] <= max_steps,
    }


def convergence_study(spec: FamilySpec, l, m, s, delta=1e-3, eps=0.1,
                      base_steps=40, rounds=3):
    """Endpoint errors of the fixed-step integrator at N, 2N, 4N, ... steps.

    A fourth-order method should shrink the error by about 16x per halving;
    the acceptance threshold is 8x."""
    x0, y0 = local_start_point(spec, l, m, s, delta, eps)
    theta = 2 * math.pi * float(theta_turns(spec, l, m))
    phi = phi_profile_end(spec, l, m, s)
    r_expected = math.sqrt(delta / eps) * math.exp(s)
    target = r_expected * complex(math.cos(phi), math.sin(phi))
    errors = []
    n = base_steps
    for _ in range(rounds):
        x, _ = _kernels.transport_fixed("local", spec.p, spec.q, eps, delta,
                                        x0, y0, theta, 0.0, n, project=False)
        errors.append(abs(x - target))
        n *= 2
    return errors


def verification_grid(spec: FamilySpec, s_values=(-2, -1, 0, 1, 2),
                      delta=1e-3, eps=0.1, tol=1e-6):
    """The (l, m) x s verification sweep; returns the list of reports."""
    from .aside import interior_index_set

    reports = []
    for (l, m) in interior_index_set(spec):
        for s in s_values:
            reports.append(verify_local_model(spec, l, m, s, delta, eps, tol))
    return reports
