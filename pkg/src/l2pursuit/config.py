"""Scenario configuration: JSON round-trip and assembly into runtime objects.

Configs hold only JSON-native values (numbers, strings, lists) so that
field-wise equality and ``--dump-config`` round-trips are exact; conversion to
numpy-backed runtime types happens in the ``to_*`` builders.
"""

import json
from dataclasses import asdict, dataclass, replace
from typing import Optional, Tuple

from .engine import EvaderPolicy, EVADER_KINDS
from .model import GameParams, L2State, LambdaSpec, ParameterError, TimeGrid
from .times import PursuitTimes

DEFAULT_STEPS = 2000
DEFAULT_HORIZON_FACTOR = 1.05


@dataclass(frozen=True)
class LambdasConfig:
    kind: str
    values: Optional[Tuple[float, ...]] = None
    a: Optional[float] = None
    b: Optional[float] = None
    n: Optional[int] = None

    def to_spec(self) -> LambdaSpec:
        if self.kind == "explicit":
            if self.values is None:
                raise ParameterError("lambdas.values", "explicit spec needs values")
            return LambdaSpec.explicit(self.values)
        if self.kind == "linear":
            if self.a is None or self.b is None or self.n is None:
                raise ParameterError("lambdas", "linear spec needs a, b, n")
            return LambdaSpec.linear(self.a, self.b, self.n)
        if self.kind == "constant":
            if self.a is None or self.n is None:
                raise ParameterError("lambdas", "constant spec needs a, n")
            return LambdaSpec.constant(self.a, self.n)
        raise ParameterError("lambdas.kind", f"unknown lambdas kind {self.kind!r}")


@dataclass(frozen=True)
class StateConfig:
    coords: Tuple[float, ...]
    tail_norm: float = 0.0


@dataclass(frozen=True)
class EvaderConfig:
    kind: str = "piecewise_random"
    seed: int = 0
    direction: Optional[Tuple[float, ...]] = None
    scale: Optional[float] = None
    path: Optional[str] = None

    def to_policy(self) -> EvaderPolicy:
        if self.kind not in EVADER_KINDS:
            raise ParameterError("evader.kind", f"unknown evader kind {self.kind!r}")
        return EvaderPolicy(
            kind=self.kind,
            direction=None if self.direction is None else list(self.direction),
            scale=self.scale,
            seed=self.seed,
            path=self.path,
        )


@dataclass(frozen=True)
class GridConfig:
    steps: int = DEFAULT_STEPS
    horizon: Optional[float] = None


@dataclass(frozen=True)
class CertifyConfig:
    x_min: float = 1e-6
    x_max: float = 1e6
    points: int = 200
    c: Optional[float] = None


@dataclass(frozen=True)
class SweepAxis:
    param: str
    values: Tuple[float, ...]


@dataclass(frozen=True)
class ScenarioConfig:
    lambdas: LambdasConfig
    z0: StateConfig
    rho: float
    sigma: float
    evader: EvaderConfig = EvaderConfig()
    grid: GridConfig = GridConfig()
    eps: Optional[float] = None
    out: Optional[str] = None
    sweep: Tuple[SweepAxis, ...] = ()
    certify: CertifyConfig = CertifyConfig()

    def to_game_params(self) -> GameParams:
        return GameParams(
            lambdas=self.lambdas.to_spec(),
            z0=L2State(coords=list(self.z0.coords), tail_norm=self.z0.tail_norm),
            rho=self.rho,
            sigma=self.sigma,
        )

    def to_time_grid(self, times: PursuitTimes) -> TimeGrid:
        horizon = self.grid.horizon
        if horizon is None:
            horizon = DEFAULT_HORIZON_FACTOR * times.guaranteed
        return TimeGrid(horizon=horizon, steps=self.grid.steps)

    def to_dict(self) -> dict:
        d = asdict(self)
        return _tuples_to_lists(d)

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @staticmethod
    def from_dict(d: dict) -> "ScenarioConfig":
        try:
            lambdas = LambdasConfig(**_with_tuples(d["lambdas"], ("values",)))
            z0 = StateConfig(**_with_tuples(d["z0"], ("coords",)))
            evader = EvaderConfig(**_with_tuples(d.get("evader", {}), ("direction",)))
            grid = GridConfig(**d.get("grid", {}))
            certify = CertifyConfig(**d.get("certify", {}))
            sweep = tuple(
                SweepAxis(param=ax["param"], values=tuple(ax["values"]))
                for ax in d.get("sweep", [])
            )
            return ScenarioConfig(
                lambdas=lambdas,
                z0=z0,
                rho=d["rho"],
                sigma=d["sigma"],
                evader=evader,
                grid=grid,
                eps=d.get("eps"),
                out=d.get("out"),
                sweep=sweep,
                certify=certify,
            )
        except (KeyError, TypeError) as exc:
            raise ParameterError("config", f"malformed scenario config: {exc}") from exc

    @staticmethod
    def from_json(text: str) -> "ScenarioConfig":
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParameterError("config", f"invalid JSON: {exc}") from exc
        if not isinstance(d, dict):
            raise ParameterError("config", "top-level JSON value must be an object")
        return ScenarioConfig.from_dict(d)


def _with_tuples(d: dict, tuple_keys: Tuple[str, ...]) -> dict:
    out = dict(d)
    for k in tuple_keys:
        if out.get(k) is not None:
            out[k] = tuple(out[k])
    return out


def _tuples_to_lists(obj):
    if isinstance(obj, tuple):
        return [_tuples_to_lists(x) for x in obj]
    if isinstance(obj, list):
        return [_tuples_to_lists(x) for x in obj]
    if isinstance(obj, dict):
        return {k: _tuples_to_lists(v) for k, v in obj.items()}
    return obj


def load_config(path: str) -> ScenarioConfig:
    with open(path) as fh:
        return ScenarioConfig.from_json(fh.read())


def demo_config() -> ScenarioConfig:
    """The paper-facing demo: lambda_i = i, z_{i0} = 1/i, N = 1000, rho = 2, sigma = 1."""
    n = 1000
    return ScenarioConfig(
        lambdas=LambdasConfig(kind="linear", a=1.0, b=0.0, n=n),
        z0=StateConfig(coords=tuple(1.0 / i for i in range(1, n + 1)), tail_norm=0.0),
        rho=2.0,
        sigma=1.0,
        evader=EvaderConfig(kind="piecewise_random", seed=0),
    )


def apply_sweep_point(cfg: ScenarioConfig, params: Tuple[str, ...], values) -> ScenarioConfig:
    """Return a copy of cfg with each sweep parameter set to the given value."""
    out = cfg
    for param, value in zip(params, values):
        if param == "rho":
            out = replace(out, rho=float(value))
        elif param == "sigma":
            out = replace(out, sigma=float(value))
        elif param in ("a", "b"):
            if out.lambdas.kind == "explicit":
                raise ParameterError(
                    "sweep", f"axis {param!r} requires a parametric lambdas family"
                )
            out = replace(out, lambdas=replace(out.lambdas, **{param: float(value)}))
        elif param == "n":
            if out.lambdas.kind == "explicit":
                raise ParameterError("sweep", "axis 'n' requires a parametric lambdas family")
            out = replace(out, lambdas=replace(out.lambdas, n=int(value)))
        else:
            raise ParameterError(
                "sweep", f"unknown sweep axis {param!r}; use rho, sigma, a, b or n"
            )
    return out
