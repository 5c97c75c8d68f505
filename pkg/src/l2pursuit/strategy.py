"""The pursuer's counter-strategy: push at rho - sigma against the initial
direction while mirroring the evader's current value, coordinate by
coordinate, until each coordinate's switch time passes.
"""

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    ADMISSIBILITY_TOL,
    AdmissibilityError,
    GameParams,
    ZeroStateError,
    l2_norm,
    materialize_lambdas,
    validate_params,
)
from .times import coordinate_capture_time


@dataclass(frozen=True, eq=False)
class PursuerStrategy:
    """Frozen strategy data for one game.

    ``direction`` holds the tracked coordinates of z0/||z0||; the control
    applies it with a minus sign.  ``tail_fraction`` is the untracked share
    of the unit vector, so direction-norm^2 + tail_fraction^2 == 1.
    """

    direction: np.ndarray
    rho: float
    sigma: float
    thrust: float
    switch_times: np.ndarray
    z0_norm: float
    tail_fraction: float


def build_strategy(p: GameParams) -> PursuerStrategy:
    """Construct the counter-strategy from validated game parameters."""
    p = validate_params(p)
    z0_norm = l2_norm(p.z0)
    if z0_norm == 0.0:
        raise ZeroStateError("z0", "strategy undefined for the zero initial state")
    lam = materialize_lambdas(p.lambdas)
    direction = p.z0.coords / z0_norm
    switch = np.array(
        [coordinate_capture_time(li, z0_norm, p.rho, p.sigma) for li in lam]
    )
    direction.flags.writeable = False
    switch.flags.writeable = False
    return PursuerStrategy(
        direction=direction,
        rho=p.rho,
        sigma=p.sigma,
        thrust=p.rho - p.sigma,
        switch_times=switch,
        z0_norm=z0_norm,
        tail_fraction=p.z0.tail_norm / z0_norm,
    )


def pursuer_control(s: PursuerStrategy, t: float, v_t: np.ndarray) -> np.ndarray:
    """Pursuer value at time t given the evader's current value.

    Coordinates still before their switch time get -direction*thrust plus the
    mirrored evader value; finished coordinates mirror the evader only.  The
    switch instant itself uses the thrusting branch.
    """
    if t < 0.0:
        raise ValueError(f"t must be >= 0, got {t}")
    v = np.asarray(v_t, dtype=np.float64)
    if v.shape != s.direction.shape:
        raise ValueError(f"evader value has shape {v.shape}, expected {s.direction.shape}")
    v_norm = math.sqrt(float(np.dot(v, v)))
    if v_norm > s.sigma + ADMISSIBILITY_TOL:
        raise AdmissibilityError(
            f"evader value norm {v_norm} exceeds sigma={s.sigma}", t=t
        )
    active = t <= s.switch_times
    return np.where(active, -s.direction * s.thrust, 0.0) + v


def control_norm(s: PursuerStrategy, t: float, v_t: np.ndarray) -> float:
    """Full l2 norm of the pursuer value, counting the untracked tail share.

    Untracked coordinates carry thrust mass thrust*tail_fraction while any of
    them is still active; before the first tracked switch time that is an
    exact accounting, afterwards an upper bound.
    """
    u = pursuer_control(s, t, v_t)
    tail_mass = s.thrust * s.tail_fraction
    return math.sqrt(float(np.dot(u, u)) + tail_mass * tail_mass)


def admissibility_margin(s: PursuerStrategy, v_samples) -> float:
    """min over samples of rho - ||pursuer value at t=0||; never below -1e-12.

    Evaluated at t = 0, where every coordinate thrusts and the control norm
    is largest.
    """
    margin = math.inf
    for v in v_samples:
        margin = min(margin, s.rho - control_norm(s, 0.0, np.asarray(v, dtype=np.float64)))
    if margin == math.inf:
        raise ValueError("need at least one evader sample")
    return margin
