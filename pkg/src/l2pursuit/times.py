"""Closed-form capture times and the decreasing-rate certificate.

Per coordinate the pursuer needs t_i = (1/rate_i) * ln(rate_i * ||z0|| / (rho - sigma) + 1);
the overall guaranteed time is the supremum over coordinates, attained at the
smallest rate because x -> ln(c*x + 1)/x is strictly decreasing.
"""

import math
from dataclasses import dataclass

import numpy as np

from .model import (
    GameParams,
    ParameterError,
    infimum_lambda,
    l2_norm,
    materialize_lambdas,
    validate_params,
)

#: Below this rate the capture-time formula is evaluated via its x -> 0 limit.
LAMBDA_DEGENERATE = 1e-12


def coordinate_capture_time(lambda_i: float, z0_norm: float, rho: float, sigma: float) -> float:
    """Time after which the i-th coordinate is pinned at zero under the strategy.

    Strictly decreasing in ``lambda_i``; log1p keeps the small-rate regime
    accurate.
    """
    if not lambda_i > 0.0:
        raise ParameterError("lambda_i", f"must be > 0, got {lambda_i}")
    if not z0_norm > 0.0:
        raise ParameterError("z0_norm", f"must be > 0, got {z0_norm}")
    if not rho > sigma:
        raise ParameterError("rho", f"need rho > sigma, got rho={rho}, sigma={sigma}")
    return math.log1p(lambda_i * z0_norm / (rho - sigma)) / lambda_i


def baseline_time(p: GameParams) -> float:
    """Reference guaranteed time ||z0|| / (rho - sigma), independent of the rates."""
    p = validate_params(p)
    return l2_norm(p.z0) / (p.rho - p.sigma)


@dataclass(frozen=True, eq=False)
class PursuitTimes:
    """Per-coordinate capture times plus the guaranteed and baseline totals.

    ``limit_regime`` flags that the minimal rate fell at or below the
    machine-degenerate threshold, so ``guaranteed`` is the small-rate limit
    value (equal to ``baseline``) rather than an attained supremum.
    """

    per_coordinate: np.ndarray
    guaranteed: float
    baseline: float
    argmin_lambda_index: int
    limit_regime: bool = False


def guaranteed_time(p: GameParams) -> PursuitTimes:
    """Guaranteed capture time: the capture-time formula at the infimum rate."""
    p = validate_params(p)
    lam = materialize_lambdas(p.lambdas)
    z0_norm = l2_norm(p.z0)
    spread = z0_norm / (p.rho - p.sigma)
    per = np.log1p(lam * spread) / lam
    per.flags.writeable = False
    argmin = int(np.argmin(lam))
    lam_min = infimum_lambda(p.lambdas)
    baseline = spread
    if lam_min <= LAMBDA_DEGENERATE:
        guaranteed = baseline
        limit = True
        slack = lam_min * spread  # first-order gap of ln(1+x)/x at x -> 0
    else:
        guaranteed = math.log1p(lam_min * spread) / lam_min
        limit = False
        slack = 0.0
    # supremum over coordinates must sit at the smallest rate
    gap = abs(guaranteed - float(per.max()))
    assert gap <= max(1e-12 * guaranteed, slack, 5e-324), (
        f"supremum mismatch: formula {guaranteed} vs max over coordinates {per.max()}"
    )
    return PursuitTimes(
        per_coordinate=per,
        guaranteed=guaranteed,
        baseline=baseline,
        argmin_lambda_index=argmin,
        limit_regime=limit,
    )


@dataclass(frozen=True, eq=False)
class MonotonicityProfile:
    """Samples of the ratio function and its decreasingness certificate."""

    x: np.ndarray
    f: np.ndarray
    g: np.ndarray
    g_prime: np.ndarray


def monotonicity_profile(c: float, xs) -> MonotonicityProfile:
    """Evaluate f(x) = ln(c*x + 1)/x together with g, g' certifying f' < 0.

    g(x) = 1 - 1/(c*x + 1) - ln(c*x + 1) satisfies f'(x) = g(x)/x^2 and
    g'(x) = -c^2 x/(c*x + 1)^2; both stay strictly negative for x > 0.
    g is computed as u/(1+u) - log1p(u) with u = c*x, which is the same
    function without the catastrophic cancellation of the 1 - 1/(1+u) form.
    """
    if not (c > 0.0 and math.isfinite(c)):
        raise ParameterError("c", f"must be finite and > 0, got {c}")
    x = np.atleast_1d(np.array(xs, dtype=np.float64, copy=True))
    if x.size == 0:
        raise ParameterError("x", "need at least one sample point")
    if not np.all(np.isfinite(x)) or np.any(x <= 0.0):
        raise ParameterError("x", "sample points must be finite and > 0")
    u = c * x
    f = np.log1p(u) / x
    g = u / (1.0 + u) - np.log1p(u)
    g_prime = -(c * c) * x / np.square(u + 1.0)
    for arr in (x, f, g, g_prime):
        arr.flags.writeable = False
    return MonotonicityProfile(x=x, f=f, g=g, g_prime=g_prime)
