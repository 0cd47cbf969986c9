"""Semi-implicit Lagrangian evolution of an open curve.

The curve moves with normal speed ``beta = -delta k + lambda w`` (curvature
smoothing plus attraction to the original curve) and a tangential speed
``alpha`` that drives the grid towards uniform spacing.  Each step is
discretised with flowing finite volumes: diffusion implicit, attraction
explicit, and the tangential advection split into implicit inflow and
explicit outflow parts.  The resulting tridiagonal system is strictly
diagonally dominant for any time step.
"""

import enum
from dataclasses import dataclass, field
from typing import NamedTuple, Optional

import numpy as np

from .attraction import attraction_w
from .curve import H_FLOOR_FACTOR, curvature, element_lengths, grid_normals, perp
from .errors import InputError, NumericalError
from .tridiag import TridiagonalSystem, thomas_solve


@dataclass(frozen=True)
class Params:
    """Model and solver constants.

    Defaults are the macrophage settings: ``lam=1``, ``delta=0.005``,
    ``omega=1``, ``tau=1e-4`` and a stopping tolerance of ``6.5e-5``.
    """

    delta: float = 0.005
    lam: float = 1.0
    omega: float = 1.0
    tau: float = 1e-4
    epsilon: float = 6.5e-5
    check_interval: int = 10
    max_steps: int = 10**6

    def __post_init__(self):
        if not self.delta >= 0:
            raise InputError("delta must be non-negative")
        if not self.lam >= 0:
            raise InputError("lambda must be non-negative")
        if not self.omega >= 0:
            raise InputError("omega must be non-negative")
        if not self.tau > 0:
            raise InputError("tau must be positive")
        if not self.epsilon > 0:
            raise InputError("epsilon must be positive")
        if self.check_interval < 1:
            raise InputError("check_interval must be at least 1")
        if self.max_steps < 1:
            raise InputError("max_steps must be at least 1")


class StopReason(str, enum.Enum):
    TOLERANCE = "tolerance"
    MAX_STEPS = "max_steps"
    FIXED_STEPS = "fixed_steps"


@dataclass
class StepDiagnostics:
    step: int
    total_length: float
    mean_kbeta: float
    h_min: float
    h_max: float
    alpha_min: float
    alpha_max: float
    alpha_residual: float  # alpha_{n+1} from the recurrence, before it is forced to zero
    dominance_slack: float  # min over rows of (diag - |sub| - |sup|) - (h_i + h_{i+1}) / (2 tau)
    length_after: float = float("nan")
    mean_hausdorff: Optional[float] = None


class Fields(NamedTuple):
    """Everything a step needs from the curve at time level ``m``."""

    h: np.ndarray  # element lengths, n + 1
    k: np.ndarray  # element curvature, n + 1
    normals: np.ndarray  # interior grid normals, (n, 2)
    w: np.ndarray  # interior attraction, n
    beta: np.ndarray  # grid normal speed, n + 2, zero at the endpoints
    length: float


def normal_velocity(k, w, params):
    """``beta_i = -delta k_i + lambda w_i`` at the grid points, zero at the ends.

    ``k`` is per element and ``w`` per interior grid point; grid point ``i``
    takes the curvature of element ``i``.
    """
    k = np.asarray(k, dtype=float)
    beta = np.zeros(k.shape[0] + 1)
    beta[1:-1] = -params.delta * k[:-1] + params.lam * np.asarray(w, dtype=float)
    return beta


def tangential_velocity(h, k, beta, length, params, full_output=False):
    """Tangential speed for asymptotically uniform grid redistribution.

    Integrates ``alpha_i = alpha_{i-1} + h_i <k beta> - h_i k_i beta_i
    + omega (L / (n + 1) - h_i)`` from ``alpha_0 = 0``.  The recurrence closes
    at ``alpha_{n+1} = 0`` up to roundoff; that residual is returned as well
    when ``full_output`` is set, and ``alpha_{n+1}`` is forced to zero.
    """
    h = np.asarray(h, dtype=float)
    k = np.asarray(k, dtype=float)
    kbeta = h * k * beta[1:]
    mean_kbeta = kbeta.sum() / length
    incr = h * mean_kbeta - kbeta + params.omega * (length / h.shape[0] - h)
    alpha = np.zeros(h.shape[0] + 1)
    np.cumsum(incr, out=alpha[1:])
    residual = float(alpha[-1])
    alpha[-1] = 0.0
    if full_output:
        return alpha, residual, float(mean_kbeta)
    return alpha


class IIOECoefficients(NamedTuple):
    """Inflow/outflow splitting at the two faces of every interior volume."""

    left_in: np.ndarray
    left_out: np.ndarray
    right_in: np.ndarray
    right_out: np.ndarray


def iioe_coefficients(alpha):
    a = np.asarray(alpha, dtype=float)[1:-1]
    return IIOECoefficients(
        left_in=np.maximum(-a, 0.0),
        left_out=np.minimum(-a, 0.0),
        right_in=np.maximum(a, 0.0),
        right_out=np.minimum(a, 0.0),
    )


def assemble_system(points, h, alpha, w, params):
    """Tridiagonal system for the interior points at time level ``m + 1``."""
    x = np.asarray(points, dtype=float)
    hl, hr = h[:-1], h[1:]
    b = iioe_coefficients(alpha)
    delta, tau = params.delta, params.tau

    mass = (hl + hr) / (2.0 * tau)
    sub = -delta / hl - 0.5 * b.left_in
    sup = -delta / hr - 0.5 * b.right_in
    diag = mass + delta / hl + delta / hr + 0.5 * b.left_in + 0.5 * b.right_in

    xi, xm, xp = x[1:-1], x[:-2], x[2:]
    rhs = (
        mass[:, None] * xi
        - (0.5 * b.right_out)[:, None] * (xi - xp)
        - (0.5 * b.left_out)[:, None] * (xi - xm)
        + (params.lam * np.asarray(w, dtype=float))[:, None] * perp(0.5 * (xp - xm))
    )
    # Dirichlet endpoints
    rhs[0] -= sub[0] * x[0]
    rhs[-1] -= sup[-1] * x[-1]
    return TridiagonalSystem(sub=sub, diag=diag, sup=sup, rhs=rhs)


def compute_fields(points, orig, params, floor=None):
    if floor is None:
        floor = H_FLOOR_FACTOR * orig.length
    h = element_lengths(points, floor)
    k = curvature(points, h)
    normals = grid_normals(points, h)
    if params.lam != 0.0:
        w = attraction_w(orig, points, normals)
    else:
        w = np.zeros(normals.shape[0])
    beta = normal_velocity(k, w, params)
    return Fields(h=h, k=k, normals=normals, w=w, beta=beta, length=float(h.sum()))


def step(points, orig, params, fields=None, step_index=0):
    """Advance the curve by one time step.

    Returns the curve at level ``m + 1`` (endpoints copied unchanged) and the
    diagnostics of the step.
    """
    points = np.asarray(points, dtype=float)
    if fields is None:
        fields = compute_fields(points, orig, params)
    h = fields.h
    alpha, residual, mean_kbeta = tangential_velocity(h, fields.k, fields.beta, fields.length, params, full_output=True)
    system = assemble_system(points, h, alpha, fields.w, params)
    slack = system.dominance_margin() - (h[:-1] + h[1:]) / (2.0 * params.tau)
    assert slack.min() >= -1e-9 * np.abs(system.diag).max()

    new = points.copy()
    new[1:-1] = thomas_solve(system)
    diag = StepDiagnostics(
        step=step_index + 1,
        total_length=fields.length,
        mean_kbeta=mean_kbeta,
        h_min=float(h.min()),
        h_max=float(h.max()),
        alpha_min=float(alpha.min()),
        alpha_max=float(alpha.max()),
        alpha_residual=residual,
        dominance_slack=float(slack.min()),
        length_after=float(np.hypot(*np.diff(new, axis=0).T).sum()),
    )
    return new, diag


def _distances_to_elements(points, polyline):
    """Distance from every point to the nearest element of ``polyline``."""
    a = polyline[:-1]
    d = np.diff(polyline, axis=0)
    rel = points[:, None, :] - a[None, :, :]
    t = np.einsum("qek,ek->qe", rel, d) / np.einsum("ek,ek->e", d, d)
    t = np.clip(t, 0.0, 1.0)
    gap = rel - t[..., None] * d[None, :, :]
    return np.hypot(gap[..., 0], gap[..., 1]).min(axis=1)


def mean_hausdorff(a, b):
    """Symmetrised mean of point-to-element distances between two curves.

    Endpoints are left out of the point averages but their elements still
    count as targets.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    ab = _distances_to_elements(a[1:-1], b).mean()
    ba = _distances_to_elements(b[1:-1], a).mean()
    return float(0.5 * (ab + ba))


@dataclass
class RunResult:
    points: np.ndarray
    history: list = field(default_factory=list)
    stop_reason: StopReason = StopReason.MAX_STEPS

    @property
    def steps(self):
        return len(self.history)

    @property
    def checks(self):
        return [(d.step, d.mean_hausdorff) for d in self.history if d.mean_hausdorff is not None]


def _advance(points, orig, params, m, observer):
    try:
        fields = compute_fields(points, orig, params)
        new, diag = step(points, orig, params, fields=fields, step_index=m)
        if observer is not None:
            observer(m, points, fields, new)
    except NumericalError as exc:
        if exc.step is None:
            exc.step = m + 1
        raise
    return new, diag


def evolve(points, orig, params, n_steps, observer=None):
    """Run exactly ``n_steps`` steps without a stopping test.

    ``observer(m, points_m, fields_m, points_m1)`` is called after every step.
    """
    points = np.array(points, dtype=float)
    result = RunResult(points=points, stop_reason=StopReason.FIXED_STEPS)
    for m in range(n_steps):
        points, diag = _advance(points, orig, params, m, observer)
        result.history.append(diag)
    result.points = points
    return result


def run_until_converged(points, orig, params, observer=None):
    """Evolve until two curves ``check_interval`` steps apart are closer than ``epsilon``.

    The mean Hausdorff distance is evaluated every ``check_interval`` steps
    between the current curve and the one from the previous check.
    """
    points = np.array(points, dtype=float)
    result = RunResult(points=points)
    reference = points
    p = params.check_interval
    for m in range(params.max_steps):
        points, diag = _advance(points, orig, params, m, observer)
        result.history.append(diag)
        if diag.step % p == 0:
            diag.mean_hausdorff = mean_hausdorff(reference, points)
            if diag.mean_hausdorff < params.epsilon:
                result.stop_reason = StopReason.TOLERANCE
                break
            reference = points
    result.points = points
    return result
