"""Shared scenario generators for the test suite."""

import numpy as np
import pytest

from l2pursuit import GameParams, L2State, LambdaSpec


def random_params(rng: np.random.Generator, n_max: int = 200, with_tail: bool = False) -> GameParams:
    """One random valid scenario: positive rates, nonzero state, rho > sigma >= 0."""
    n = int(rng.integers(1, n_max + 1))
    if with_tail:
        kind = rng.choice(("linear", "constant"))
        if kind == "linear":
            spec = LambdaSpec.linear(
                a=float(10.0 ** rng.uniform(-1, 1)),
                b=float(10.0 ** rng.uniform(-2, 1)),
                n=n,
            )
        else:
            spec = LambdaSpec.constant(a=float(10.0 ** rng.uniform(-2, 2)), n=n)
        tail = float(10.0 ** rng.uniform(-3, 0))
    else:
        spec = LambdaSpec.explicit(10.0 ** rng.uniform(-2, 2, size=n))
        tail = 0.0
    coords = rng.standard_normal(n) * 10.0 ** rng.uniform(-2, 2)
    if not np.any(coords != 0.0):
        coords[0] = 1.0
    rho = float(10.0 ** rng.uniform(-1, 1))
    sigma = float(rho * rng.uniform(0.0, 0.95))
    return GameParams(
        lambdas=spec, z0=L2State(coords, tail_norm=tail), rho=rho, sigma=sigma
    )


@pytest.fixture
def rng():
    return np.random.default_rng(20260825)


# filled by test_acceptance, echoed after the run so the verdict lines survive
# output capture
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
