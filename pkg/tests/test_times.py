"""Closed-form pursuit times and the monotonicity certificate."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from l2pursuit import (
    GameParams,
    ParameterError,
    baseline_time,
    coordinate_capture_time,
    guaranteed_time,
    monotonicity_profile,
)

# mpmath oracles at 60 digits, frozen.
LN2 = 0.69314718055994531
HALF_LN5 = 0.80471895621705019  # (1/2) ln 5
DEMO_NORM_1000 = 1.2821601174118464


def params(lambdas, z0, rho, sigma):
    return GameParams(lambdas=lambdas, z0=z0, rho=rho, sigma=sigma)


class TestCoordinateCaptureTime:
    def test_ln2_case(self):
        assert coordinate_capture_time(1.0, 1.0, 2.0, 1.0) == pytest.approx(LN2, rel=1e-15)

    def test_half_ln5_case(self):
        assert coordinate_capture_time(2.0, 3.0, 2.0, 0.5) == pytest.approx(
            HALF_LN5, rel=1e-15
        )

    def test_small_rate_limit(self):
        t = coordinate_capture_time(1e-8, 1.0, 2.0, 1.0)
        assert abs(t - 1.0) <= 1e-7

    def test_preconditions(self):
        with pytest.raises(ParameterError):
            coordinate_capture_time(0.0, 1.0, 2.0, 1.0)
        with pytest.raises(ParameterError):
            coordinate_capture_time(1.0, 0.0, 2.0, 1.0)
        with pytest.raises(ParameterError):
            coordinate_capture_time(1.0, 1.0, 1.0, 1.0)

    @given(st.floats(1e-6, 1e6), st.floats(1e-3, 1e3))
    @settings(max_examples=300, deadline=None)
    def test_strictly_decreasing_in_rate(self, lam, z0n):
        t1 = coordinate_capture_time(lam, z0n, 2.0, 1.0)
        t2 = coordinate_capture_time(lam * 1.5, z0n, 2.0, 1.0)
        assert t2 < t1

    @given(st.floats(1e-6, 1e6), st.floats(1e-3, 1e3))
    @settings(max_examples=300, deadline=None)
    def test_positive(self, lam, z0n):
        assert coordinate_capture_time(lam, z0n, 2.0, 1.0) > 0.0


class TestGuaranteedTime:
    def test_ordered_list(self):
        times = guaranteed_time(params([1.0, 2.0, 3.0], [1.0, 0.0, 0.0], 2.0, 1.0))
        assert times.guaranteed == pytest.approx(LN2, rel=1e-15)
        assert times.argmin_lambda_index == 0
        assert not times.limit_regime

    def test_unordered_list_same_supremum(self):
        times = guaranteed_time(params([3.0, 1.0, 2.0], [1.0, 0.0, 0.0], 2.0, 1.0))
        assert times.guaranteed == pytest.approx(LN2, rel=1e-15)
        assert times.argmin_lambda_index == 1

    def test_supremum_is_max_over_coordinates(self, rng):
        for _ in range(50):
            n = int(rng.integers(1, 30))
            lam = 10.0 ** rng.uniform(-3, 3, size=n)
            z0 = rng.standard_normal(n)
            if not np.any(z0 != 0.0):
                z0[0] = 1.0
            rho = float(10.0 ** rng.uniform(-1, 1))
            sigma = rho * float(rng.uniform(0.0, 0.9))
            times = guaranteed_time(params(lam, z0, rho, sigma))
            assert times.guaranteed == pytest.approx(
                float(times.per_coordinate.max()), rel=1e-12
            )
            assert np.all(times.per_coordinate > 0.0)

    def test_improvement_strict(self, rng):
        for _ in range(100):
            n = int(rng.integers(1, 20))
            lam = 10.0 ** rng.uniform(-4, 4, size=n)
            z0 = rng.standard_normal(n)
            if not np.any(z0 != 0.0):
                z0[0] = 1.0
            times = guaranteed_time(params(lam, z0, 2.0, 1.0))
            assert times.guaranteed < times.baseline

    def test_limit_regime_flagged(self):
        times = guaranteed_time(params([1e-13], [1.0], 2.0, 1.0))
        assert times.limit_regime
        assert times.guaranteed == times.baseline

    def test_limit_consistency_first_order(self):
        for eps in (1e-6, 1e-8, 1e-10):
            times = guaranteed_time(params([eps], [1.0], 2.0, 1.0))
            t0 = times.baseline
            assert abs(times.guaranteed / t0 - 1.0) <= 10.0 * eps * t0

    def test_small_state_limit(self):
        times = guaranteed_time(params([1.0], [1e-150], 2.0, 1.0))
        assert 0.0 < times.guaranteed < 1e-149


class TestBaselineTime:
    def test_unit_case(self):
        assert baseline_time(params([1.0], [1.0], 2.0, 1.0)) == 1.0

    def test_two_over_two(self):
        assert baseline_time(params([1.0], [2.0], 3.0, 1.0)) == 1.0

    def test_demo_norm(self):
        coords = 1.0 / np.arange(1, 1001)
        lam = np.arange(1, 1001, dtype=np.float64)
        assert baseline_time(params(lam, coords, 2.0, 1.0)) == pytest.approx(
            DEMO_NORM_1000, rel=1e-15
        )


class TestMonotonicityProfile:
    def test_point_values_c1(self):
        prof = monotonicity_profile(1.0, [1.0])
        assert prof.f[0] == pytest.approx(LN2, rel=1e-15)
        assert prof.g[0] == pytest.approx(0.5 - LN2, rel=1e-14)
        assert prof.g_prime[0] == pytest.approx(-0.25, rel=1e-15)

    def test_g_prime_c2(self):
        prof = monotonicity_profile(2.0, [1.0])
        assert prof.g_prime[0] == pytest.approx(-4.0 / 9.0, rel=1e-15)

    def test_g_vanishes_at_origin(self):
        prof = monotonicity_profile(1.0, [1e-10])
        assert abs(prof.g[0]) <= 1e-9

    def test_certificates_all_negative(self):
        xs = np.geomspace(1e-6, 1e6, 200)
        for c in (0.01, 1.0, 100.0):
            prof = monotonicity_profile(c, xs)
            assert np.all(prof.g < 0.0)
            assert np.all(prof.g_prime < 0.0)
            assert np.all(np.diff(prof.f) < 0.0)

    def test_domain_errors(self):
        with pytest.raises(ParameterError):
            monotonicity_profile(0.0, [1.0])
        with pytest.raises(ParameterError):
            monotonicity_profile(1.0, [0.0])
        with pytest.raises(ParameterError):
            monotonicity_profile(1.0, [-1.0, 1.0])
        with pytest.raises(ParameterError):
            monotonicity_profile(1.0, [])

    def test_does_not_freeze_caller_array(self):
        xs = np.array([1.0, 2.0])
        monotonicity_profile(1.0, xs)
        xs[0] = 3.0  # would raise if the profile had frozen the caller's array
