"""Domain types, parameter validation and l2-norm arithmetic.

The game lives on the sequence space l2: states are square-summable real
sequences, represented here by their leading coordinates plus a certified
bound on the norm of the untracked tail.
"""

import math
from dataclasses import dataclass

import numpy as np

#: Closed-tolerance slack used for control-norm admissibility checks.
ADMISSIBILITY_TOL = 1e-12


class ParameterError(ValueError):
    """Invalid game parameter. ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


class NonPositiveLambdaError(ParameterError):
    """Some decay rate is zero or negative."""


class BudgetOrderError(ParameterError):
    """Pursuer budget does not strictly exceed the evader budget."""


class ZeroStateError(ParameterError):
    """Initial state has zero norm; the pursuer direction is undefined."""


class NonFiniteError(ParameterError):
    """A parameter is NaN or infinite."""


class ShapeMismatchError(ParameterError):
    """Rate sequence and initial state disagree on the truncation length."""


class AdmissibilityError(ValueError):
    """A control value exceeds its norm budget."""

    def __init__(self, message: str, t: float | None = None):
        super().__init__(message)
        self.t = t


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.float64, copy=True)
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class LambdaSpec:
    """Decay-rate sequence: an explicit list or a parametric family.

    Families extend conceptually to all indices; ``n`` is only the
    truncation kept in simulation.  ``linear`` means rate_i = a*i + b
    (i starting at 1), ``constant`` means rate_i = a.
    """

    kind: str
    values: tuple[float, ...] = ()
    a: float = 0.0
    b: float = 0.0
    n: int = 0

    @classmethod
    def explicit(cls, values) -> "LambdaSpec":
        vals = tuple(float(v) for v in values)
        return cls("explicit", values=vals, n=len(vals))

    @classmethod
    def linear(cls, a: float, b: float, n: int) -> "LambdaSpec":
        return cls("linear", a=float(a), b=float(b), n=int(n))

    @classmethod
    def constant(cls, a: float, n: int) -> "LambdaSpec":
        return cls("constant", a=float(a), n=int(n))

    @property
    def count(self) -> int:
        return len(self.values) if self.kind == "explicit" else self.n


def materialize_lambdas(spec: LambdaSpec, n: int | None = None) -> np.ndarray:
    """Realize the first ``n`` rates as an explicit positive float array.

    Family entries follow the family formula exactly; any nonpositive or
    nonfinite entry raises, naming the first offending 1-based index.
    """
    if n is None:
        n = spec.count
    if n < 1:
        raise ParameterError("lambdas", f"need at least one rate, got n={n}")
    if spec.kind == "explicit":
        if n > len(spec.values):
            raise ShapeMismatchError(
                "lambdas", f"asked for {n} rates but only {len(spec.values)} given"
            )
        lam = np.asarray(spec.values[:n], dtype=np.float64)
    elif spec.kind == "linear":
        idx = np.arange(1, n + 1, dtype=np.float64)
        lam = spec.a * idx + spec.b
    elif spec.kind == "constant":
        lam = np.full(n, float(spec.a))
    else:
        raise ParameterError("lambdas.kind", f"unknown kind {spec.kind!r}")
    if not np.all(np.isfinite(lam)):
        i = int(np.nonzero(~np.isfinite(lam))[0][0])
        raise NonFiniteError("lambdas", f"rate at i={i + 1} is not finite")
    if np.any(lam <= 0.0):
        i = int(np.nonzero(lam <= 0.0)[0][0])
        raise NonPositiveLambdaError(
            "lambdas", f"rate at i={i + 1} is {lam[i]}, must be > 0"
        )
    return _readonly(lam)


def infimum_lambda(spec: LambdaSpec) -> float:
    """Infimum of the full (untruncated) rate sequence, computed per family.

    Explicit lists take the minimum entry.  A linear family with negative
    slope eventually goes nonpositive and is rejected outright.
    """
    if spec.kind == "explicit":
        lam = materialize_lambdas(spec)
        return float(lam.min())
    if spec.kind == "linear":
        if spec.a < 0.0:
            raise NonPositiveLambdaError(
                "lambdas", "linear family with negative slope goes nonpositive beyond the truncation"
            )
        value = spec.a + spec.b
    elif spec.kind == "constant":
        value = spec.a
    else:
        raise ParameterError("lambdas.kind", f"unknown kind {spec.kind!r}")
    if not math.isfinite(value):
        raise NonFiniteError("lambdas", "family infimum is not finite")
    if value <= 0.0:
        raise NonPositiveLambdaError("lambdas", f"family infimum {value} must be > 0")
    return float(value)


@dataclass(frozen=True, eq=False)
class L2State:
    """Truncated l2 vector: explicit leading coordinates plus a tail-norm bound."""

    coords: np.ndarray
    tail_norm: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "coords", _readonly(np.atleast_1d(self.coords)))
        object.__setattr__(self, "tail_norm", float(self.tail_norm))
        if not self.tail_norm >= 0.0:  # also rejects NaN
            raise ParameterError("z0.tail_norm", f"must be >= 0, got {self.tail_norm}")

    def __eq__(self, other):
        if not isinstance(other, L2State):
            return NotImplemented
        return np.array_equal(self.coords, other.coords) and self.tail_norm == other.tail_norm

    def scaled(self, c: float) -> "L2State":
        return L2State(c * self.coords, abs(c) * self.tail_norm)


def _sum_squares(values: np.ndarray) -> float:
    # Neumaier compensated sum over squares, ascending index: bit-stable
    # independent of chunking or thread count.
    total = 0.0
    comp = 0.0
    for v in values:
        sq = v * v
        t = total + sq
        if abs(total) >= sq:
            comp += (total - t) + sq
        else:
            comp += (sq - t) + total
        total = t
    return total + comp


def l2_norm(state: L2State) -> float:
    """sqrt(sum coords_i^2 + tail_norm^2) with a fixed summation order."""
    return math.sqrt(_sum_squares(state.coords) + state.tail_norm * state.tail_norm)


@dataclass(frozen=True, eq=False)
class GameParams:
    """Game data: decay rates, initial state, and the two control budgets."""

    lambdas: LambdaSpec
    z0: L2State
    rho: float
    sigma: float

    def __post_init__(self):
        if not isinstance(self.lambdas, LambdaSpec):
            object.__setattr__(self, "lambdas", LambdaSpec.explicit(self.lambdas))
        if not isinstance(self.z0, L2State):
            object.__setattr__(self, "z0", L2State(np.asarray(self.z0, dtype=np.float64)))
        object.__setattr__(self, "rho", float(self.rho))
        object.__setattr__(self, "sigma", float(self.sigma))

    @property
    def n(self) -> int:
        return int(self.z0.coords.size)

    @property
    def thrust(self) -> float:
        """Net pursuer advantage rho - sigma."""
        return self.rho - self.sigma


def validate_params(p: GameParams) -> GameParams:
    """Return ``p`` unchanged if every invariant holds, else raise the matching error.

    Checks, in order: finiteness of the budgets and state, rate positivity
    (including family behaviour beyond the truncation), truncation-length
    agreement, sigma >= 0, rho > sigma, and nonzero initial state.
    """
    for name, value in (("rho", p.rho), ("sigma", p.sigma)):
        if not math.isfinite(value):
            raise NonFiniteError(name, f"must be finite, got {value}")
    if not np.all(np.isfinite(p.z0.coords)):
        i = int(np.nonzero(~np.isfinite(p.z0.coords))[0][0])
        raise NonFiniteError("z0", f"coordinate at i={i + 1} is not finite")
    if not math.isfinite(p.z0.tail_norm):
        raise NonFiniteError("z0.tail_norm", "must be finite")
    lam = materialize_lambdas(p.lambdas)
    infimum_lambda(p.lambdas)
    if lam.size != p.n:
        raise ShapeMismatchError(
            "lambdas", f"{lam.size} rates but {p.n} state coordinates"
        )
    if p.sigma < 0.0:
        raise ParameterError("sigma", f"must be >= 0, got {p.sigma}")
    if p.rho <= p.sigma:
        raise BudgetOrderError("rho", f"need rho > sigma, got rho={p.rho}, sigma={p.sigma}")
    z0_norm = l2_norm(p.z0)
    if not math.isfinite(z0_norm):
        raise NonFiniteError("z0", "norm overflows")
    if z0_norm == 0.0:
        raise ZeroStateError("z0", "initial state must be nonzero")
    return p


@dataclass(frozen=True)
class TimeGrid:
    """Uniform mesh on [t0, horizon]; controls are held constant per step."""

    horizon: float
    steps: int
    t0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "horizon", float(self.horizon))
        object.__setattr__(self, "steps", int(self.steps))
        object.__setattr__(self, "t0", float(self.t0))
        if not (math.isfinite(self.t0) and math.isfinite(self.horizon)):
            raise ParameterError("grid", "bounds must be finite")
        if self.horizon <= self.t0:
            raise ParameterError("grid.horizon", f"must exceed t0={self.t0}, got {self.horizon}")
        if self.steps < 1:
            raise ParameterError("grid.steps", f"must be >= 1, got {self.steps}")

    @property
    def h(self) -> float:
        return (self.horizon - self.t0) / self.steps

    def points(self) -> np.ndarray:
        # linspace pins both endpoints exactly
        return np.linspace(self.t0, self.horizon, self.steps + 1)
