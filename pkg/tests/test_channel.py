import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mbnsim import (
    SPEED_OF_LIGHT,
    Architecture,
    BandType,
    ChannelParams,
    ConfigurationError,
    Deployment,
    DeploymentSpec,
    Station,
    evaluate_links,
    rx_power_rf,
    rx_power_thz,
    sample_deployment,
    thermal_noise,
)


class TestChannelParamsValidation:
    def test_defaults_valid(self):
        ChannelParams()

    def test_nonpositive_power_rejected(self):
        with pytest.raises(ConfigurationError):
            ChannelParams(p_tx_rf=0.0)

    def test_p_align_range(self):
        with pytest.raises(ConfigurationError) as exc:
            ChannelParams(p_align=1.5)
        assert any("p_align" in p for p in exc.value.problems)

    def test_negative_absorption_rejected(self):
        with pytest.raises(ConfigurationError):
            ChannelParams(k_abs=-0.1)

    def test_multiple_problems_reported(self):
        with pytest.raises(ConfigurationError) as exc:
            ChannelParams(b_rf=-1.0, p_align=2.0)
        assert len(exc.value.problems) == 2


class TestRxPowerThz:
    def test_frozen_reference_value(self):
        # oracle: direct evaluation of the spreading+absorption budget
        params = ChannelParams(k_abs=0.0033)
        oracle = (
            0.2 * (10.0**2.5) ** 2
            * (SPEED_OF_LIGHT / (4.0 * math.pi * 1e12 * 50.0)) ** 2
            * math.exp(-0.0033 * 50.0)
        )
        assert oracle == pytest.approx(3.860584612100796e-09, rel=1e-15)
        assert rx_power_thz(params, 50.0) == pytest.approx(oracle, rel=1e-12)

    def test_inverse_square_without_absorption(self):
        params = ChannelParams(k_abs=0.0)
        ratio = rx_power_thz(params, 37.0) / rx_power_thz(params, 74.0)
        assert ratio == pytest.approx(4.0, rel=1e-12)

    def test_monotone_decreasing_in_distance(self):
        params = ChannelParams()
        assert rx_power_thz(params, 1.0) > rx_power_thz(params, 400.0)

    @given(
        st.floats(0.0, 0.5), st.floats(0.0, 0.5),
        st.floats(1.0, 400.0),
    )
    def test_monotone_in_absorption(self, k1, k2, d):
        lo, hi = sorted((k1, k2))
        assert rx_power_thz(ChannelParams(k_abs=lo), d) >= rx_power_thz(
            ChannelParams(k_abs=hi), d
        )


class TestRxPowerRf:
    def test_frozen_reference_value(self):
        params = ChannelParams(p_tx_rf=2.0, pathloss_exp_rf=3.0)
        oracle = 2.0 * (SPEED_OF_LIGHT / (4.0 * math.pi * 2e9)) ** 2 * 100.0**-3.0
        assert oracle == pytest.approx(2.845716828571725e-10, rel=1e-15)
        assert rx_power_rf(params, 100.0, 1.0) == pytest.approx(oracle, rel=1e-12)

    def test_zero_fading_gives_zero(self):
        assert rx_power_rf(ChannelParams(), 50.0, 0.0) == 0.0

    def test_distance_power_law(self):
        params = ChannelParams(pathloss_exp_rf=4.0)
        ratio = rx_power_rf(params, 30.0, 1.0) / rx_power_rf(params, 60.0, 1.0)
        assert ratio == pytest.approx(2.0**4.0, rel=1e-12)


class TestThermalNoise:
    def test_frozen_product(self):
        params = ChannelParams(noise_psd=3.98e-21, noise_figure_db=0.0)
        assert thermal_noise(params, 10e9) == pytest.approx(3.98e-11, rel=1e-12)

    def test_unit_bandwidth(self):
        params = ChannelParams(noise_figure_db=0.0)
        assert thermal_noise(params, 1.0) == params.noise_psd

    def test_linear_in_bandwidth(self):
        params = ChannelParams(noise_figure_db=5.0)
        assert thermal_noise(params, 2e6) == pytest.approx(
            2.0 * thermal_noise(params, 1e6), rel=1e-12
        )


def _fixed_deployment(stations, user=(0.0, 0.0)):
    return Deployment(
        stations=tuple(Station((float(x), float(y)), band) for x, y, band in stations),
        user=(float(user[0]), float(user[1])),
    )


class TestEvaluateLinks:
    def test_single_station_no_interference(self):
        dep = _fixed_deployment([(60.0, 0.0, BandType.THZ)])
        params = ChannelParams()
        (link,) = evaluate_links(dep, params, 1)
        assert link.interference == 0.0
        assert link.sinr == link.rx_power / link.noise
        assert link.rate == params.b_thz * math.log2(1.0 + link.sinr)

    def test_zero_alignment_probability_kills_thz_interference(self):
        dep = _fixed_deployment(
            [(50.0, 0.0, BandType.THZ), (0.0, 80.0, BandType.THZ), (30.0, 30.0, BandType.THZ)]
        )
        links = evaluate_links(dep, ChannelParams(p_align=0.0), 3)
        assert all(link.interference == 0.0 for link in links)

    def test_three_rf_stations_match_hand_computed_sums(self):
        # oracle: explicit per-station budgets summed by hand
        positions = [(50.0, 0.0), (0.0, 120.0), (-200.0, 0.0)]
        params = ChannelParams(pathloss_exp_rf=3.0)
        dep = _fixed_deployment([(x, y, BandType.RF) for x, y in positions])
        links = evaluate_links(dep, params, 0, fading=[1.0, 1.0, 1.0], aligned=[False] * 3)

        const = 2.0 * (SPEED_OF_LIGHT / (4.0 * math.pi * 2e9)) ** 2
        powers = [const * math.hypot(x, y) ** -3.0 for x, y in positions]
        noise = params.noise_psd * params.b_rf
        for i, link in enumerate(links):
            expected_interference = sum(p for j, p in enumerate(powers) if j != i)
            assert link.rx_power == pytest.approx(powers[i], rel=1e-12)
            assert link.interference == pytest.approx(expected_interference, rel=1e-12)
            expected_sinr = powers[i] / (expected_interference + noise)
            assert link.sinr == pytest.approx(expected_sinr, rel=1e-12)

    def test_hybrid_yields_rf_then_thz_candidates(self):
        dep = _fixed_deployment([(40.0, 0.0, BandType.HYBRID), (90.0, 0.0, BandType.HYBRID)])
        links = evaluate_links(dep, ChannelParams(), 7)
        assert [link.band for link in links] == [
            BandType.RF, BandType.THZ, BandType.RF, BandType.THZ,
        ]

    def test_full_alignment_equals_deterministic_sum(self):
        dep = _fixed_deployment(
            [(30.0, 10.0, BandType.THZ), (80.0, -5.0, BandType.THZ),
             (10.0, 150.0, BandType.THZ), (-60.0, 40.0, BandType.THZ)]
        )
        params = ChannelParams(p_align=1.0)
        links = evaluate_links(dep, params, 11)
        rx = [link.rx_power for link in links]
        for i, link in enumerate(links):
            assert link.interference == pytest.approx(
                sum(p for j, p in enumerate(rx) if j != i), rel=1e-12
            )

    def test_minimum_distance_clamp(self):
        dep = _fixed_deployment([(0.2, 0.0, BandType.THZ)])
        params = ChannelParams()
        (link,) = evaluate_links(dep, params, 0)
        assert link.distance == params.min_distance
        assert link.rx_power == pytest.approx(
            rx_power_thz(params, params.min_distance), rel=1e-12
        )

    def test_deterministic_in_seed(self):
        spec = DeploymentSpec(Architecture.SA, n_rf=3, n_thz=3)
        dep = sample_deployment(spec, 21)
        params = ChannelParams()
        assert evaluate_links(dep, params, 42) == evaluate_links(dep, params, 42)

    @given(st.integers(0, 2**32 - 1))
    def test_budgets_finite_and_nonnegative(self, seed):
        spec = DeploymentSpec(Architecture.INT, n_hyb=4, region_radius=300.0)
        dep = sample_deployment(spec, seed)
        for link in evaluate_links(dep, ChannelParams(), seed):
            assert math.isfinite(link.rate)
            assert link.rx_power >= 0.0
            assert link.interference >= 0.0
            assert link.noise > 0.0
            assert link.sinr >= 0.0

    def test_rate_monotone_in_bandwidth_and_interference(self):
        spec = DeploymentSpec(Architecture.SA, n_rf=2, n_thz=2)
        dep = sample_deployment(spec, 3)
        narrow = evaluate_links(dep, ChannelParams(b_thz=1e9), 5)
        wide = evaluate_links(dep, ChannelParams(b_thz=2e9), 5)
        for a, b in zip(narrow, wide):
            if a.band is BandType.THZ:
                assert b.rate >= a.rate

        calm = evaluate_links(dep, ChannelParams(p_align=0.0), 5)
        noisy = evaluate_links(dep, ChannelParams(p_align=1.0), 5)
        for a, b in zip(calm, noisy):
            if a.band is BandType.THZ:
                assert b.rate <= a.rate
