"""Simulation and verification library for the linear pursuit-evasion game on l2.

The game is z_i' = -lambda_i z_i + u_i - v_i with geometric control bounds
norm(u) <= rho for the pursuer and norm(v) <= sigma for the evader, rho > sigma.
The package builds the pursuer's counter-strategy, computes the guaranteed
pursuit times T_i and T together with the baseline T0, simulates full games
with exact exponential stepping, and certifies capture plus every identity
used in the proof.
"""

from .dynamics import (
    SegmentInput,
    closed_form_under_strategy,
    coordinate_state_under_strategy,
    exact_step,
    integral_identity_residual,
    rk4_step,
)
from .engine import (
    AuditReport,
    CaptureReport,
    ControlSignal,
    EvaderPolicy,
    GameResult,
    HorizonError,
    Trajectory,
    admissibility_audit,
    build_signal,
    constant_direction_evader,
    piecewise_random_evader,
    radial_outward_evader,
    replay_evader,
    run_game,
    tail_bound,
    tail_cutoff_time,
    write_signal_csv,
    write_trajectory_csv,
    zero_evader,
)
from .kernels import available_backends, default_backend, simulate_segments
from .model import (
    AdmissibilityError,
    BudgetOrderError,
    GameParams,
    L2State,
    LambdaSpec,
    NonFiniteError,
    NonPositiveLambdaError,
    ParameterError,
    ShapeMismatchError,
    TimeGrid,
    ZeroStateError,
    infimum_lambda,
    l2_norm,
    materialize_lambdas,
    validate_params,
)
from .strategy import (
    PursuerStrategy,
    admissibility_margin,
    build_strategy,
    control_norm,
    pursuer_control,
)
from .times import (
    MonotonicityProfile,
    PursuitTimes,
    baseline_time,
    coordinate_capture_time,
    guaranteed_time,
    monotonicity_profile,
)
from .config import ScenarioConfig, demo_config, load_config

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError",
    "AuditReport",
    "BudgetOrderError",
    "CaptureReport",
    "ControlSignal",
    "EvaderPolicy",
    "GameParams",
    "GameResult",
    "HorizonError",
    "L2State",
    "LambdaSpec",
    "MonotonicityProfile",
    "NonFiniteError",
    "NonPositiveLambdaError",
    "ParameterError",
    "PursuerStrategy",
    "PursuitTimes",
    "ScenarioConfig",
    "SegmentInput",
    "ShapeMismatchError",
    "TimeGrid",
    "Trajectory",
    "ZeroStateError",
    "admissibility_audit",
    "admissibility_margin",
    "available_backends",
    "baseline_time",
    "build_signal",
    "build_strategy",
    "closed_form_under_strategy",
    "constant_direction_evader",
    "control_norm",
    "coordinate_capture_time",
    "coordinate_state_under_strategy",
    "default_backend",
    "demo_config",
    "exact_step",
    "guaranteed_time",
    "infimum_lambda",
    "integral_identity_residual",
    "l2_norm",
    "load_config",
    "materialize_lambdas",
    "monotonicity_profile",
    "piecewise_random_evader",
    "pursuer_control",
    "radial_outward_evader",
    "replay_evader",
    "rk4_step",
    "run_game",
    "simulate_segments",
    "tail_bound",
    "tail_cutoff_time",
    "validate_params",
    "write_signal_csv",
    "write_trajectory_csv",
    "zero_evader",
]
