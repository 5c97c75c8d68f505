"""Exact per-coordinate trajectory evaluation and an independent RK4 oracle.

Each coordinate obeys dz/dt = -rate * z + w(t) with w the relative control.
For piecewise-constant w the variation-of-constants solution makes stepping
exact; the closed form under the pursuer strategy pins the coordinate at zero
from its switch time onward.
"""

import math
from dataclasses import dataclass
from typing import Callable

from .model import GameParams, ParameterError
from .strategy import PursuerStrategy
from .times import coordinate_capture_time


@dataclass(frozen=True)
class SegmentInput:
    """One hold interval: rate, entry state, constant relative control, duration."""

    lam: float
    z_start: float
    w: float
    h: float

    def __post_init__(self):
        vals = (self.lam, self.z_start, self.w, self.h)
        if not all(math.isfinite(v) for v in vals):
            raise ParameterError("segment", f"entries must be finite, got {vals}")
        if self.lam <= 0.0:
            raise ParameterError("segment.lam", f"must be > 0, got {self.lam}")
        if self.h <= 0.0:
            raise ParameterError("segment.h", f"must be > 0, got {self.h}")


def exact_step(seg: SegmentInput) -> float:
    """Advance one hold interval exactly: e^{-lam h} z + (w/lam)(1 - e^{-lam h}).

    The decaying factor is written via expm1 so small lam*h does not cancel.
    """
    x = seg.lam * seg.h
    return math.exp(-x) * seg.z_start + (seg.w / seg.lam) * (-math.expm1(-x))


def coordinate_state_under_strategy(
    lam: float, z_i0: float, z0_norm: float, thrust: float, t: float
) -> float:
    """State of one coordinate at time t when the pursuer plays its strategy.

    Exactly zero for t at or past the coordinate's switch time; before that,
    e^{-lam t} * z_i0 * (1 - thrust*(e^{lam t}-1)/(lam*||z0||)).  Valid for any
    coordinate index, tracked or not, because the relative control under the
    strategy does not involve the evader.
    """
    if t < 0.0:
        raise ParameterError("t", f"must be >= 0, got {t}")
    t_switch = coordinate_capture_time(lam, z0_norm, thrust, 0.0)
    if t >= t_switch:
        return 0.0
    bracket = 1.0 - thrust * math.expm1(lam * t) / (lam * z0_norm)
    return math.exp(-lam * t) * z_i0 * bracket


def closed_form_under_strategy(
    i: int, t: float, p: GameParams, s: PursuerStrategy
) -> float:
    """Closed-form state of tracked coordinate ``i`` (0-based) at time ``t``."""
    from .model import materialize_lambdas

    lam = materialize_lambdas(p.lambdas)
    if not 0 <= i < lam.size:
        raise ParameterError("i", f"coordinate index {i} outside the tracked range")
    return coordinate_state_under_strategy(
        float(lam[i]), float(p.z0.coords[i]), s.z0_norm, s.thrust, t
    )


def rk4_step(
    lam: float, z: float, w_of_t: Callable[[float], float], h: float, t0: float = 0.0
) -> float:
    """Classical fourth-order Runge-Kutta step for dz/dt = -lam z + w(t).

    Numerical oracle only: no admissibility logic, no exactness claims.
    """
    if h <= 0.0:
        raise ParameterError("h", f"must be > 0, got {h}")

    def rhs(t, y):
        return -lam * y + w_of_t(t)

    k1 = rhs(t0, z)
    k2 = rhs(t0 + 0.5 * h, z + 0.5 * h * k1)
    k3 = rhs(t0 + 0.5 * h, z + 0.5 * h * k2)
    k4 = rhs(t0 + h, z + h * k3)
    return z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integral_identity_residual(
    lambda_i: float, t_switch: float, z0_norm: float, rho: float, sigma: float
) -> float:
    """(e^{lam*T} - 1)/lam - ||z0||/(rho - sigma); vanishes at the closed-form switch time."""
    if not (lambda_i > 0.0 and t_switch > 0.0 and z0_norm > 0.0):
        raise ParameterError("identity", "arguments must be positive")
    if not rho > sigma:
        raise ParameterError("rho", f"need rho > sigma, got rho={rho}, sigma={sigma}")
    return math.expm1(lambda_i * t_switch) / lambda_i - z0_norm / (rho - sigma)
