import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from mbnsim import (
    Architecture,
    BandType,
    ChannelParams,
    DeploymentSpec,
    DomainError,
    LinkBudget,
    Policy,
    associate,
    bias_score,
    evaluate_links,
    policy_score,
    sample_deployment,
)


def _budget(band, rx, d, bandwidth, interference=0.0, noise=1e-12):
    sinr = rx / (interference + noise)
    return LinkBudget(
        band=band, rx_power=rx, interference=interference, noise=noise,
        sinr=sinr, rate=bandwidth * math.log2(1.0 + sinr), distance=d,
    )


class TestBiasScore:
    def test_thz_frozen_value(self):
        # oracle: 1e10 * 1e-9 * exp(0.005 * 100)
        params = ChannelParams(b_thz=10e9, k_abs=0.005)
        link = _budget(BandType.THZ, 1e-9, 100.0, params.b_thz)
        assert bias_score(link, params) == pytest.approx(16.487212707001284, rel=1e-12)

    def test_rf_frozen_value(self):
        params = ChannelParams(b_rf=40e6)
        link = _budget(BandType.RF, 2.85e-10, 100.0, params.b_rf)
        assert bias_score(link, params) == pytest.approx(0.0114, rel=1e-12)

    def test_zero_absorption_degenerates_to_bandwidth_weighting(self):
        params = ChannelParams(k_abs=0.0)
        link = _budget(BandType.THZ, 3e-10, 250.0, params.b_thz)
        assert bias_score(link, params) == params.b_thz * 3e-10

    def test_ignores_interference_and_noise_fields(self):
        params = ChannelParams(k_abs=0.02)
        quiet = _budget(BandType.THZ, 5e-10, 80.0, params.b_thz, interference=0.0)
        loud = _budget(BandType.THZ, 5e-10, 80.0, params.b_thz, interference=1e-6, noise=1e-3)
        assert bias_score(quiet, params) == bias_score(loud, params)
        # recomputable from (bandwidth, rx_power, distance) alone
        assert bias_score(quiet, params) == params.b_thz * 5e-10 * math.exp(0.02 * 80.0)


class TestPolicyScore:
    def test_field_passthrough(self):
        params = ChannelParams()
        link = _budget(BandType.RF, 5e-10, 120.0, params.b_rf, interference=2e-11)
        assert policy_score(Policy.MAX_RSRP, link, params) == 5e-10
        assert policy_score(Policy.MAX_SINR, link, params) == link.sinr
        assert policy_score(Policy.MAX_RATE, link, params) == link.rate
        assert policy_score(Policy.MAX_RATE, link, params) == params.b_rf * math.log2(
            1.0 + link.sinr
        )
        assert policy_score(Policy.BIASED, link, params) == bias_score(link, params)


class TestAssociate:
    def test_empty_candidates_rejected(self):
        with pytest.raises(DomainError):
            associate(Policy.MAX_RATE, [], ChannelParams())

    def test_singleton_wins_under_every_policy(self):
        params = ChannelParams()
        link = _budget(BandType.THZ, 1e-10, 90.0, params.b_thz)
        for policy in Policy:
            outcome = associate(policy, [link], params)
            assert outcome.serving_index == 0
            assert outcome.serving_band is BandType.THZ

    def test_tie_breaks_to_lowest_index(self):
        params = ChannelParams()
        links = [
            _budget(BandType.RF, 2e-10, 50.0, params.b_rf),
            _budget(BandType.RF, 2e-10, 50.0, params.b_rf),
        ]
        assert associate(Policy.MAX_RSRP, links, params).serving_index == 0

    @given(st.lists(st.floats(1e-14, 1e-8), min_size=5, max_size=5))
    def test_matches_exhaustive_argmax(self, rx_powers):
        params = ChannelParams()
        links = [_budget(BandType.RF, rx, 75.0, params.b_rf) for rx in rx_powers]
        outcome = associate(Policy.MAX_RSRP, links, params)
        # oracle: scan every candidate, keep the first maximum
        best, best_i = None, None
        for i, link in enumerate(links):
            if best is None or link.rx_power > best:
                best, best_i = link.rx_power, i
        assert outcome.serving_index == best_i
        assert outcome.score == best

    @given(st.floats(1e-3, 1e3))
    def test_positive_scaling_leaves_winner_unchanged(self, scale):
        params = ChannelParams(k_abs=0.01)
        scaled = ChannelParams(
            k_abs=0.01, b_rf=params.b_rf * scale, b_thz=params.b_thz * scale
        )
        links = [
            _budget(BandType.RF, 4e-10, 60.0, params.b_rf),
            _budget(BandType.THZ, 9e-11, 45.0, params.b_thz),
            _budget(BandType.THZ, 2e-11, 190.0, params.b_thz),
        ]
        base = associate(Policy.BIASED, links, params)
        rescaled = associate(Policy.BIASED, links, scaled)
        assert rescaled.serving_index == base.serving_index
        assert rescaled.score == pytest.approx(scale * base.score, rel=1e-9)

    def test_zero_absorption_equal_bandwidths_matches_rsrp(self):
        params = ChannelParams(k_abs=0.0, b_thz=40e6)
        spec = DeploymentSpec(Architecture.INT, n_hyb=6)
        for seed in range(25):
            dep = sample_deployment(spec, seed)
            links = evaluate_links(dep, params, seed)
            assert (
                associate(Policy.BIASED, links, params).serving_index
                == associate(Policy.MAX_RSRP, links, params).serving_index
            )

    def test_single_hybrid_picks_faster_band_under_max_rate(self):
        params = ChannelParams()
        spec = DeploymentSpec(Architecture.INT, n_hyb=1)
        for seed in range(25):
            dep = sample_deployment(spec, seed)
            links = evaluate_links(dep, params, seed)
            outcome = associate(Policy.MAX_RATE, links, params)
            fastest = max(range(len(links)), key=lambda i: links[i].rate)
            assert outcome.serving_index == fastest
            if links[1].rate > links[0].rate:
                assert outcome.serving_band is BandType.THZ
