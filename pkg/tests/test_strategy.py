"""Counter-strategy construction, evaluation, and admissibility."""

import math

import numpy as np
import pytest

from l2pursuit import (
    AdmissibilityError,
    GameParams,
    L2State,
    ZeroStateError,
    admissibility_margin,
    build_strategy,
    control_norm,
    pursuer_control,
)

LN2 = 0.69314718055994531


def make(lambdas, z0, rho=2.0, sigma=1.0, tail=0.0):
    return GameParams(
        lambdas=lambdas, z0=L2State(np.asarray(z0, dtype=np.float64), tail_norm=tail),
        rho=rho, sigma=sigma,
    )


class TestBuildStrategy:
    def test_basic_construction(self):
        s = build_strategy(make([1.0, 1.0], [1.0, 0.0]))
        assert np.array_equal(s.direction, np.array([1.0, 0.0]))
        assert s.thrust == 1.0
        assert s.switch_times[0] == pytest.approx(LN2, rel=1e-15)
        assert s.switch_times[0] == s.switch_times[1]

    def test_normalization(self):
        s = build_strategy(make([1.0, 1.0], [3.0, 4.0]))
        assert np.array_equal(s.direction, np.array([0.6, 0.8]))
        assert s.tail_fraction == 0.0

    def test_zero_state_rejected(self):
        with pytest.raises(ZeroStateError):
            build_strategy(make([1.0], [0.0]))

    def test_direction_unit_with_tail(self):
        s = build_strategy(make([1.0], [3.0], tail=4.0))
        total = float(np.dot(s.direction, s.direction)) + s.tail_fraction**2
        assert total == pytest.approx(1.0, rel=1e-14)
        assert np.sqrt(np.dot(s.direction, s.direction)) <= 1.0 + 1e-15

    def test_scaling_leaves_direction_fixed(self):
        p1 = make([1.0, 2.0], [0.3, -0.4])
        p2 = make([1.0, 2.0], [0.6, -0.8])
        s1, s2 = build_strategy(p1), build_strategy(p2)
        assert np.array_equal(s1.direction, s2.direction)
        assert np.all(s2.switch_times > s1.switch_times)

    def test_fields_readonly(self):
        s = build_strategy(make([1.0], [1.0]))
        with pytest.raises(ValueError):
            s.direction[0] = 0.0
        with pytest.raises(ValueError):
            s.switch_times[0] = 0.0


class TestPursuerControl:
    def test_zero_evader_full_thrust(self):
        s = build_strategy(make([1.0, 1.0], [1.0, 0.0]))
        u = pursuer_control(s, 0.0, np.zeros(2))
        assert np.array_equal(u, np.array([-1.0, 0.0]))
        assert np.linalg.norm(u) == s.thrust

    def test_after_all_switches_mirrors_evader(self):
        s = build_strategy(make([1.0, 1.0], [1.0, 0.0]))
        v = np.array([0.3, -0.4])
        u = pursuer_control(s, float(s.switch_times.max()) * 2.0, v)
        assert np.array_equal(u, v)

    def test_mixed_example(self):
        s = build_strategy(make([1.0, 1.0], [1.0, 0.0]))
        u = pursuer_control(s, 0.0, np.array([0.0, 1.0]))
        assert np.array_equal(u, np.array([-1.0, 1.0]))
        assert np.linalg.norm(u) <= 2.0

    def test_switch_instant_uses_thrust_branch(self):
        s = build_strategy(make([1.0], [1.0]))
        t_i = float(s.switch_times[0])
        u = pursuer_control(s, t_i, np.zeros(1))
        assert u[0] == -1.0
        assert pursuer_control(s, np.nextafter(t_i, 2.0), np.zeros(1))[0] == 0.0

    def test_inadmissible_evader_rejected_with_timestamp(self):
        s = build_strategy(make([1.0], [1.0], rho=2.0, sigma=0.5))
        with pytest.raises(AdmissibilityError) as err:
            pursuer_control(s, 0.25, np.array([0.6]))
        assert err.value.t == 0.25

    def test_negative_time_rejected(self):
        s = build_strategy(make([1.0], [1.0]))
        with pytest.raises(ValueError):
            pursuer_control(s, -1.0, np.zeros(1))

    def test_shape_mismatch_rejected(self):
        s = build_strategy(make([1.0], [1.0]))
        with pytest.raises(ValueError):
            pursuer_control(s, 0.0, np.zeros(2))

    def test_admissibility_fuzz(self, rng):
        # the Minkowski chain: ||u|| <= (rho - sigma) + sigma = rho
        for _ in range(20):
            n = int(rng.integers(1, 30))
            coords = rng.standard_normal(n)
            if not np.any(coords != 0.0):
                coords[0] = 1.0
            rho = float(10.0 ** rng.uniform(-1, 1))
            sigma = rho * float(rng.uniform(0.0, 0.95))
            s = build_strategy(make([1.0] * n, coords, rho=rho, sigma=sigma))
            for _ in range(50):
                v = rng.standard_normal(n)
                v *= sigma * rng.uniform(0.0, 1.0) ** (1.0 / n) / np.linalg.norm(v)
                t = float(rng.uniform(0.0, 2.0 * s.switch_times.max()))
                assert control_norm(s, t, v) <= rho + 1e-12

    def test_adversarial_aligned_evader(self):
        # v exactly anti-parallel to the thrust makes the chain an equality
        s = build_strategy(make([1.0, 1.0], [3.0, 4.0], rho=2.0, sigma=1.0))
        v = -s.direction * s.sigma
        assert control_norm(s, 0.0, v) <= s.rho + 1e-12


class TestAdmissibilityMargin:
    def test_zero_sample_gives_sigma(self):
        s = build_strategy(make([1.0], [1.0], rho=2.0, sigma=1.0))
        assert admissibility_margin(s, [np.zeros(1)]) == pytest.approx(1.0, abs=1e-12)

    def test_no_evader_budget_gives_zero(self):
        s = build_strategy(make([1.0], [1.0], rho=2.0, sigma=0.0))
        assert admissibility_margin(s, [np.zeros(1)]) == pytest.approx(0.0, abs=1e-12)

    def test_sphere_samples_lower_bounded(self, rng):
        s = build_strategy(make([1.0, 2.0, 3.0], [1.0, 1.0, 1.0], rho=1.5, sigma=1.0))
        samples = []
        for _ in range(200):
            v = rng.standard_normal(3)
            samples.append(v / np.linalg.norm(v) * s.sigma)
        samples.append(-s.direction / np.linalg.norm(s.direction) * s.sigma)
        assert admissibility_margin(s, samples) >= -1e-12

    def test_empty_samples_rejected(self):
        s = build_strategy(make([1.0], [1.0]))
        with pytest.raises(ValueError):
            admissibility_margin(s, [])
