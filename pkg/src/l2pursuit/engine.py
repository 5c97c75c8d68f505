"""Game orchestration: evader policies, time stepping, capture detection.

The engine holds controls constant on each grid step (zero-order hold), splits
steps exactly at every switch time T_i so the closed-form zeros land on grid
points, and certifies the truncation tail with a time-dependent bound.  The
pursuer observes the evader's value for the current step before stepping, the
information pattern of a counter-strategy.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .kernels import default_backend, simulate_segments
from .model import (
    ADMISSIBILITY_TOL,
    AdmissibilityError,
    GameParams,
    ParameterError,
    TimeGrid,
    l2_norm,
    materialize_lambdas,
    validate_params,
)
from .strategy import PursuerStrategy, build_strategy
from .times import PursuitTimes, coordinate_capture_time, guaranteed_time

EVADER_KINDS = ("zero", "constant_direction", "piecewise_random", "radial_outward", "replay")


class HorizonError(Exception):
    """Grid horizon is shorter than the guaranteed pursuit time."""

    def __init__(self, horizon: float, required: float):
        self.horizon = float(horizon)
        self.required = float(required)
        super().__init__(
            f"horizon {self.horizon!r} is shorter than the guaranteed time {self.required!r}"
        )


@dataclass(frozen=True)
class EvaderPolicy:
    """Specification of one evader behavior; realized by build_signal.

    Every policy emits values with ``norm(v) <= sigma`` (closed constraint).
    The paper's theorem makes the outcome independent of this choice; the
    policy library exists to demonstrate exactly that.
    """

    kind: str
    direction: Optional[np.ndarray] = None
    scale: Optional[float] = None
    seed: int = 0
    path: Optional[str] = None

    def __post_init__(self):
        if self.kind not in EVADER_KINDS:
            raise ParameterError("evader.kind", f"unknown evader kind {self.kind!r}")
        if self.direction is not None:
            d = np.array(self.direction, dtype=np.float64, copy=True)
            d.flags.writeable = False
            object.__setattr__(self, "direction", d)


def zero_evader() -> EvaderPolicy:
    return EvaderPolicy(kind="zero")


def constant_direction_evader(direction, scale: float) -> EvaderPolicy:
    return EvaderPolicy(kind="constant_direction", direction=direction, scale=float(scale))


def piecewise_random_evader(seed: int = 0) -> EvaderPolicy:
    return EvaderPolicy(kind="piecewise_random", seed=int(seed))


def radial_outward_evader() -> EvaderPolicy:
    return EvaderPolicy(kind="radial_outward")


def replay_evader(path: str) -> EvaderPolicy:
    return EvaderPolicy(kind="replay", path=str(path))


@dataclass(frozen=True)
class ControlSignal:
    """Piecewise-constant control: values[k] holds on [points[k], points[k+1])."""

    grid: TimeGrid
    values: np.ndarray

    def __post_init__(self):
        v = np.array(self.values, dtype=np.float64, copy=True)
        if v.ndim != 2 or v.shape[0] != self.grid.steps:
            raise ParameterError(
                "signal.values",
                f"expected shape ({self.grid.steps}, n), got {v.shape}",
            )
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    def value_at(self, t: float) -> np.ndarray:
        k = int(np.floor((t - self.grid.t0) / self.grid.h))
        k = min(max(k, 0), self.grid.steps - 1)
        return self.values[k]


def write_signal_csv(path: str, signal: ControlSignal) -> None:
    """One row per hold segment, coordinates comma-separated, 17 significant digits."""
    np.savetxt(path, signal.values, delimiter=",", fmt="%.17g")


def read_signal_values(path: str) -> np.ndarray:
    return np.atleast_2d(np.loadtxt(path, delimiter=",", ndmin=2))


def build_signal(policy: EvaderPolicy, p: GameParams, grid: TimeGrid) -> ControlSignal:
    """Realize an evader policy as a ZOH signal over the grid's base segments."""
    n = p.n
    sigma = p.sigma
    m = grid.steps
    if policy.kind == "zero":
        values = np.zeros((m, n))
    elif policy.kind == "constant_direction":
        if policy.direction is None or policy.scale is None:
            raise ParameterError("evader.direction", "constant_direction needs direction and scale")
        d = np.asarray(policy.direction, dtype=np.float64)
        if d.shape != (n,):
            raise ParameterError("evader.direction", f"expected {n} coordinates, got {d.shape}")
        norm = float(np.sqrt(np.dot(d, d)))
        if not np.isfinite(norm) or norm == 0.0:
            if policy.scale != 0.0:
                raise ParameterError("evader.direction", "direction must be nonzero and finite")
            values = np.zeros((m, n))
        else:
            if policy.scale < 0.0 or policy.scale > sigma + ADMISSIBILITY_TOL:
                raise AdmissibilityError(
                    f"constant_direction scale {policy.scale} exceeds sigma {sigma}"
                )
            values = np.tile(d / norm * policy.scale, (m, 1))
    elif policy.kind == "piecewise_random":
        rng = np.random.default_rng(policy.seed)
        g = rng.standard_normal((m, n))
        norms = np.sqrt(np.sum(g * g, axis=1))
        norms[norms == 0.0] = 1.0
        radii = sigma * rng.random(m) ** (1.0 / n)
        values = g / norms[:, None] * radii[:, None]
    elif policy.kind == "radial_outward":
        z0n = l2_norm(p.z0)
        values = np.tile(p.z0.coords / z0n * sigma, (m, 1))
    elif policy.kind == "replay":
        if policy.path is None:
            raise ParameterError("evader.path", "replay needs a file path")
        values = read_signal_values(policy.path)
        if values.shape != (m, n):
            raise ParameterError(
                "evader.path",
                f"replay file has shape {values.shape}, expected ({m}, {n})",
            )
    else:  # pragma: no cover - guarded by EvaderPolicy.__post_init__
        raise ParameterError("evader.kind", f"unknown evader kind {policy.kind!r}")
    return ControlSignal(grid=grid, values=values)


def tail_cutoff_time(p: GameParams) -> float:
    """Time after which every truncated-tail coordinate is certified zero.

    Under the strategy each tail coordinate i > N vanishes at its own T_i, and
    T_i decreases in lambda_i, so the tail is wholly zero once t reaches the
    T_i of the smallest tail eigenvalue.  That eigenvalue is only known for
    parametric families; explicit specs get an infinite (conservative) cutoff.
    """
    validate_params(p)
    if p.z0.tail_norm == 0.0:
        return 0.0
    spec = p.lambdas
    if spec.kind == "linear":
        lam_tail = spec.a * (spec.n + 1) + spec.b
    elif spec.kind == "constant":
        lam_tail = spec.a
    else:
        return np.inf
    z0n = l2_norm(p.z0)
    return coordinate_capture_time(lam_tail, z0n, p.rho, p.sigma)


def tail_bound(p: GameParams, t: float) -> float:
    """Certified bound on the norm of coordinates beyond the truncation at time t.

    Valid under the pursuer strategy: |z_i(t)| <= |z_{i0}| on [0, T_i] and
    z_i(t) = 0 afterwards, so the initial tail norm bounds the tail for all t
    and the bound collapses to zero past the cutoff.
    """
    if t >= tail_cutoff_time(p):
        return 0.0
    return p.z0.tail_norm


@dataclass(frozen=True)
class CaptureReport:
    captured: bool
    capture_time: Optional[float]
    per_coordinate_zero_times: np.ndarray
    residual_norm_at_T: float
    tail_bound_at_T: float
    guaranteed_T: float
    baseline_T0: float


@dataclass(frozen=True)
class Trajectory:
    """Sampled run history; controls are ZOH so the value at a sample time is
    the value on the segment starting there (final sample repeats the last)."""

    t: np.ndarray
    norm_z: np.ndarray
    norm_u: np.ndarray
    norm_v: np.ndarray
    captured_count: np.ndarray
    tail_bound: np.ndarray
    states: Optional[np.ndarray] = None


@dataclass(frozen=True)
class GameResult:
    report: CaptureReport
    trajectory: Trajectory
    times: PursuitTimes
    strategy: PursuerStrategy
    eps: float
    backend: str


def _merged_bounds(grid: TimeGrid, switch_times: np.ndarray):
    """Union of base grid points and in-horizon switch times, plus the map
    from each merged segment to its base (control-holding) segment."""
    base = grid.points()
    inside = switch_times[(switch_times > grid.t0) & (switch_times <= grid.horizon)]
    bounds = np.union1d(base, inside)
    base_seg = np.clip(
        np.searchsorted(base, bounds[:-1], side="right") - 1, 0, grid.steps - 1
    ).astype(np.int64)
    return bounds, base_seg


def run_game(
    p: GameParams,
    policy: EvaderPolicy,
    grid: TimeGrid,
    eps: Optional[float] = None,
    *,
    sample_every: int = 1,
    store_states: bool = False,
    backend: Optional[str] = None,
) -> GameResult:
    """Simulate one full game and certify the capture claim.

    Steps every materialized coordinate with the exact exponential update,
    splitting steps at each switch time T_i, and declares capture at the first
    sample where the explicit norm and the tail bound both fall within eps
    (default 1e-9 * norm(z0)).
    """
    validate_params(p)
    times = guaranteed_time(p)
    if grid.horizon < times.guaranteed:
        raise HorizonError(grid.horizon, times.guaranteed)
    if sample_every < 1:
        raise ParameterError("sample_every", "must be a positive integer")
    s = build_strategy(p)
    z0n = s.z0_norm
    if eps is None:
        eps = 1e-9 * z0n
    if not (eps > 0.0) or not np.isfinite(eps):
        raise ParameterError("eps", f"capture tolerance must be positive and finite, got {eps!r}")

    signal = build_signal(policy, p, grid)
    V = signal.values
    v_norms = np.sqrt(np.sum(V * V, axis=1))
    bad = np.nonzero(v_norms > p.sigma + ADMISSIBILITY_TOL)[0]
    if bad.size:
        t_bad = grid.t0 + bad[0] * grid.h
        raise AdmissibilityError(
            f"evader value norm {v_norms[bad[0]]!r} exceeds sigma {p.sigma!r}", t=t_bad
        )

    lam = materialize_lambdas(p.lambdas)
    bounds, base_seg = _merged_bounds(grid, s.switch_times)
    # The relative control u - v is evader-independent by construction of the
    # strategy; stepping uses it directly so distinct policies yield bitwise
    # identical trajectories.
    w_active = -s.direction * s.thrust

    switch_bound_idx = np.zeros(p.n, dtype=np.int64)
    reachable = s.switch_times <= grid.horizon
    idx = np.searchsorted(bounds, s.switch_times[reachable])
    switch_bound_idx[reachable] = idx

    if backend is None:
        backend = default_backend()
    norm_z, seg_u, seg_v, states = simulate_segments(
        lam, p.z0.coords, w_active, s.switch_times, switch_bound_idx,
        bounds, base_seg, V, store_states=store_states, backend=backend,
    )

    cutoff = tail_cutoff_time(p)
    tail = np.where(bounds >= cutoff, 0.0, p.z0.tail_norm)
    # Tail thrust mass raises the recorded pursuer norm until the tail is out.
    tail_u = np.where(bounds[:-1] < cutoff, (s.thrust * s.tail_fraction) ** 2, 0.0)
    seg_u = np.sqrt(seg_u * seg_u + tail_u)

    sorted_switch = np.sort(s.switch_times[reachable])
    captured_count = np.searchsorted(sorted_switch, bounds, side="right")

    ok = (norm_z <= eps) & (tail <= eps)
    hit = np.nonzero(ok)[0]
    captured = hit.size > 0
    capture_time = float(bounds[hit[0]]) if captured else None

    at_T = min(int(np.searchsorted(bounds, times.guaranteed, side="left")), bounds.size - 1)
    zero_times = np.where(reachable, s.switch_times, np.nan)
    zero_times.flags.writeable = False

    report = CaptureReport(
        captured=bool(captured),
        capture_time=capture_time,
        per_coordinate_zero_times=zero_times,
        residual_norm_at_T=float(norm_z[at_T]),
        tail_bound_at_T=float(tail[at_T]),
        guaranteed_T=times.guaranteed,
        baseline_T0=times.baseline,
    )

    norm_u = np.append(seg_u, seg_u[-1])
    norm_v = np.append(seg_v, seg_v[-1])
    keep = np.arange(0, bounds.size, sample_every)
    if keep[-1] != bounds.size - 1:
        keep = np.append(keep, bounds.size - 1)
    trajectory = Trajectory(
        t=bounds[keep],
        norm_z=norm_z[keep],
        norm_u=norm_u[keep],
        norm_v=norm_v[keep],
        captured_count=captured_count[keep],
        tail_bound=tail[keep],
        states=states[keep] if store_states else None,
    )
    return GameResult(
        report=report, trajectory=trajectory, times=times, strategy=s,
        eps=float(eps), backend=backend,
    )


@dataclass(frozen=True)
class AuditReport:
    ok: bool
    max_norm_u: float
    max_norm_v: float
    u_violations: np.ndarray
    v_violations: np.ndarray


def admissibility_audit(trajectory: Trajectory, rho: float, sigma: float) -> AuditReport:
    """Check recorded control norms against the budgets; list violating times."""
    bad_u = trajectory.t[trajectory.norm_u > rho + ADMISSIBILITY_TOL]
    bad_v = trajectory.t[trajectory.norm_v > sigma + ADMISSIBILITY_TOL]
    return AuditReport(
        ok=bad_u.size == 0 and bad_v.size == 0,
        max_norm_u=float(np.max(trajectory.norm_u)),
        max_norm_v=float(np.max(trajectory.norm_v)),
        u_violations=bad_u,
        v_violations=bad_v,
    )


TRAJECTORY_HEADER = "t,norm_z,norm_u,norm_v,captured_count,tail_bound"


def write_trajectory_csv(path: str, trajectory: Trajectory) -> None:
    with open(path, "w") as fh:
        fh.write(TRAJECTORY_HEADER + "\n")
        for k in range(trajectory.t.size):
            fh.write(
                "%.17g,%.17g,%.17g,%.17g,%d,%.17g\n"
                % (
                    trajectory.t[k],
                    trajectory.norm_z[k],
                    trajectory.norm_u[k],
                    trajectory.norm_v[k],
                    int(trajectory.captured_count[k]),
                    trajectory.tail_bound[k],
                )
            )
