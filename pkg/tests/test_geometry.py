import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import integrate, stats

from mbnsim import (
    Architecture,
    BandType,
    ConfigurationError,
    DeploymentSpec,
    distance,
    sample_deployment,
)

SA = Architecture.SA
INT = Architecture.INT


class TestDistance:
    def test_pythagorean_triple(self):
        assert distance((0.0, 0.0), (3.0, 4.0)) == 5.0

    def test_identity(self):
        assert distance((12.5, -7.0), (12.5, -7.0)) == 0.0

    def test_translated_triple(self):
        assert distance((1.0, 1.0), (4.0, 5.0)) == 5.0

    @given(
        st.floats(-1e4, 1e4), st.floats(-1e4, 1e4),
        st.floats(-1e4, 1e4), st.floats(-1e4, 1e4),
    )
    def test_symmetric_nonnegative(self, ax, ay, bx, by):
        d = distance((ax, ay), (bx, by))
        assert d >= 0.0
        assert d == distance((bx, by), (ax, ay))


class TestDeploymentSpec:
    def test_zero_stations_rejected(self):
        with pytest.raises(ConfigurationError):
            DeploymentSpec(SA, n_rf=0, n_thz=0)

    def test_nonpositive_radius_rejected(self):
        with pytest.raises(ConfigurationError):
            DeploymentSpec(SA, n_rf=1, region_radius=0.0)

    def test_sa_forbids_hybrids(self):
        with pytest.raises(ConfigurationError):
            DeploymentSpec(SA, n_rf=1, n_hyb=2)

    def test_int_forbids_dedicated(self):
        with pytest.raises(ConfigurationError):
            DeploymentSpec(INT, n_rf=1, n_hyb=2)

    def test_negative_count_rejected(self):
        with pytest.raises(ConfigurationError):
            DeploymentSpec(SA, n_rf=-1, n_thz=2)

    def test_error_lists_every_problem(self):
        with pytest.raises(ConfigurationError) as exc:
            DeploymentSpec(INT, n_hyb=0, region_radius=-1.0)
        assert len(exc.value.problems) == 2


class TestSampleDeployment:
    def test_single_rf_station_in_disk(self):
        spec = DeploymentSpec(SA, n_rf=1, region_radius=400.0)
        dep = sample_deployment(spec, 5)
        assert len(dep.stations) == 1
        assert dep.stations[0].band is BandType.RF
        assert distance(dep.stations[0].position, (0.0, 0.0)) <= 400.0
        assert distance(dep.user, (0.0, 0.0)) <= 400.0

    def test_deterministic_for_same_seed(self):
        spec = DeploymentSpec(INT, n_hyb=10, region_radius=400.0)
        assert sample_deployment(spec, 123) == sample_deployment(spec, 123)

    def test_band_counts_exact(self):
        spec = DeploymentSpec(SA, n_rf=5, n_thz=7)
        dep = sample_deployment(spec, 9)
        bands = [s.band for s in dep.stations]
        assert bands.count(BandType.RF) == 5
        assert bands.count(BandType.THZ) == 7

    @given(st.integers(0, 2**63 - 1))
    def test_pure_in_seed(self, seed):
        spec = DeploymentSpec(SA, n_rf=2, n_thz=3, region_radius=250.0)
        first = sample_deployment(spec, seed)
        assert first == sample_deployment(spec, seed)
        for station in first.stations:
            assert distance(station.position, (0.0, 0.0)) <= 250.0

    def test_radial_uniformity_chi_square(self):
        # equal-area annuli: uniform positions give equal expected counts
        spec = DeploymentSpec(INT, n_hyb=10, region_radius=400.0)
        radii = []
        for seed in range(2000):
            dep = sample_deployment(spec, seed)
            radii.extend(distance(s.position, (0.0, 0.0)) for s in dep.stations)
        bins = 400.0 * np.sqrt(np.linspace(0.0, 1.0, 21))
        counts, _ = np.histogram(radii, bins=bins)
        result = stats.chisquare(counts)
        assert result.pvalue > 0.01


def _disk_overlap_area(r, t, R):
    """Area of disk(center at radius r, radius t) intersected with disk(0, R)."""
    if t <= R - r:
        return math.pi * t * t
    if t >= R + r:
        return math.pi * R * R
    ca = min(1.0, max(-1.0, (r * r + t * t - R * R) / (2.0 * r * t)))
    cb = min(1.0, max(-1.0, (r * r + R * R - t * t) / (2.0 * r * R)))
    square = max(0.0, (-r + t + R) * (r + t - R) * (r - t + R) * (r + t + R))
    return t * t * math.acos(ca) + R * R * math.acos(cb) - 0.5 * math.sqrt(square)


def test_mean_nearest_station_distance_matches_quadrature():
    """Empirical mean user-to-nearest-station distance vs the order-statistics
    integral for 10 uniform points in a disk, both points-of-view uniform."""
    R = 400.0
    m = 10

    def survival(t, r):
        return (1.0 - _disk_overlap_area(r, t, R) / (math.pi * R * R)) ** m

    def mean_min_given_r(r):
        value, _ = integrate.quad(survival, 0.0, r + R, args=(r,), limit=200)
        return value

    expected, _ = integrate.quad(
        lambda r: (2.0 * r / (R * R)) * mean_min_given_r(r), 0.0, R, limit=200
    )

    spec = DeploymentSpec(SA, n_rf=5, n_thz=5, region_radius=R)
    total = 0.0
    n_seeds = 100_000
    for seed in range(n_seeds):
        dep = sample_deployment(spec, seed)
        total += min(distance(s.position, dep.user) for s in dep.stations)
    empirical = total / n_seeds
    assert empirical == pytest.approx(expected, rel=0.01)
