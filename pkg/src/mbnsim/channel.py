"""Per-link radio budgets: received power, interference, noise, SINR, rate.

THz links follow free-space spreading with exponential molecular absorption
and fixed antenna gains at both ends; no small-scale fading (highly
directional beams). RF links follow a Friis constant times a ``d^-alpha``
power law with unit-mean exponential (Rayleigh power) fading. The serving
THz beam is always aligned; interfering THz stations only count when their
per-trial alignment draw succeeds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigurationError, DomainError
from .geometry import BandType, Deployment, distance
from .seeding import SeedLike, substream

SPEED_OF_LIGHT = 299792458.0  # m/s

_POSITIVE_FIELDS = (
    "f_rf", "f_thz", "b_rf", "b_thz", "p_tx_rf", "p_tx_thz",
    "g_rf", "g_thz", "noise_psd", "pathloss_exp_rf", "min_distance",
)


@dataclass(frozen=True)
class ChannelParams:
    """Radio constants shared by every link in a trial.

    Antenna gains are linear, per end (25 dB THz ends give ``g_thz**2`` on a
    link). ``k_abs`` is the molecular absorption coefficient in 1/m and
    ``p_align`` the probability that an interfering THz beam points at the
    user. ``min_distance`` clamps link distances to keep the spreading-loss
    formulas out of the near field.
    """

    f_rf: float = 2e9
    f_thz: float = 1e12
    b_rf: float = 40e6
    b_thz: float = 10e9
    p_tx_rf: float = 2.0
    p_tx_thz: float = 0.2
    g_rf: float = 1.0
    g_thz: float = 10.0 ** 2.5
    k_abs: float = 0.05
    p_align: float = 0.006
    noise_psd: float = 10.0 ** -20.4  # W/Hz (-174 dBm/Hz)
    noise_figure_db: float = 0.0
    pathloss_exp_rf: float = 4.0
    min_distance: float = 1.0

    def __post_init__(self):
        problems = []
        for name in _POSITIVE_FIELDS:
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value > 0):
                problems.append(f"{name} must be strictly positive (got {value!r})")
        if not (isinstance(self.k_abs, (int, float)) and math.isfinite(self.k_abs) and self.k_abs >= 0):
            problems.append(f"k_abs must be non-negative (got {self.k_abs!r})")
        if not (isinstance(self.p_align, (int, float)) and 0.0 <= self.p_align <= 1.0):
            problems.append(f"p_align must lie within [0, 1] (got {self.p_align!r})")
        if not (isinstance(self.noise_figure_db, (int, float)) and math.isfinite(self.noise_figure_db)):
            problems.append(f"noise_figure_db must be finite (got {self.noise_figure_db!r})")
        if problems:
            raise ConfigurationError(problems)


@dataclass(frozen=True)
class LinkBudget:
    """Budget of one candidate link; ``band`` is RF or THz, never Hybrid."""

    band: BandType
    rx_power: float
    interference: float
    noise: float
    sinr: float
    rate: float
    distance: float


def _rf_power_const(params: ChannelParams) -> float:
    """Transmit power times gains times the Friis constant at the RF carrier."""
    wavelength_term = SPEED_OF_LIGHT / (4.0 * math.pi * params.f_rf)
    return params.p_tx_rf * params.g_rf * params.g_rf * wavelength_term * wavelength_term


def _thz_power_const(params: ChannelParams) -> float:
    wavelength_term = SPEED_OF_LIGHT / (4.0 * math.pi * params.f_thz)
    return params.p_tx_thz * params.g_thz * params.g_thz * wavelength_term * wavelength_term


def rx_power_thz(params: ChannelParams, d: float) -> float:
    """THz received power at distance ``d >= min_distance`` meters."""
    return _thz_power_const(params) * math.exp(-params.k_abs * d) / (d * d)


def rx_power_rf(params: ChannelParams, d: float, fading: float) -> float:
    """RF received power at distance ``d`` with channel power gain ``fading``."""
    return _rf_power_const(params) * d ** (-params.pathloss_exp_rf) * fading


def thermal_noise(params: ChannelParams, bandwidth: float) -> float:
    """Noise floor in watts over ``bandwidth`` Hz, including the noise figure."""
    return params.noise_psd * bandwidth * 10.0 ** (params.noise_figure_db / 10.0)


def _budget(band, rx, interference, noise, bandwidth, d) -> LinkBudget:
    sinr = rx / (interference + noise)
    return LinkBudget(
        band=band,
        rx_power=rx,
        interference=interference,
        noise=noise,
        sinr=sinr,
        rate=bandwidth * math.log2(1.0 + sinr),
        distance=d,
    )


def evaluate_links(
    dep: Deployment,
    params: ChannelParams,
    seed: SeedLike,
    *,
    fading=None,
    aligned=None,
) -> list[LinkBudget]:
    """Budget every candidate link of a deployment.

    Each station contributes one candidate per band it can serve, in station
    order with the RF candidate before the THz one for hybrids. Interference
    on a band is the sum of co-band received powers from every *other*
    station able to transmit on it, with THz interferers gated by their
    alignment draw. One fading and one alignment variate are drawn per
    station regardless of band, so stream consumption is independent of the
    band layout; passing ``fading``/``aligned`` overrides skips those draws
    (useful for pinned-channel tests).
    """
    n = len(dep.stations)
    if fading is None or aligned is None:
        rng = substream(seed)
        if fading is None:
            fading = rng.exponential(1.0, n)
        if aligned is None:
            aligned = rng.random(n) < params.p_align
    if len(fading) != n or len(aligned) != n:
        raise DomainError("fading/aligned overrides must have one entry per station")

    noise_rf = thermal_noise(params, params.b_rf)
    noise_thz = thermal_noise(params, params.b_thz)
    dists = []
    rx_rf = []
    rx_thz = []
    for i, station in enumerate(dep.stations):
        d = max(distance(station.position, dep.user), params.min_distance)
        dists.append(d)
        rf_capable = station.band in (BandType.RF, BandType.HYBRID)
        thz_capable = station.band in (BandType.THZ, BandType.HYBRID)
        rx_rf.append(rx_power_rf(params, d, float(fading[i])) if rf_capable else 0.0)
        rx_thz.append(rx_power_thz(params, d) if thz_capable else 0.0)

    budgets = []
    for i, station in enumerate(dep.stations):
        if station.band in (BandType.RF, BandType.HYBRID):
            interference = 0.0
            for k in range(n):
                if k != i:
                    interference += rx_rf[k]
            budgets.append(
                _budget(BandType.RF, rx_rf[i], interference, noise_rf, params.b_rf, dists[i])
            )
        if station.band in (BandType.THZ, BandType.HYBRID):
            interference = 0.0
            for k in range(n):
                if k != i and aligned[k]:
                    interference += rx_thz[k]
            budgets.append(
                _budget(BandType.THZ, rx_thz[i], interference, noise_thz, params.b_thz, dists[i])
            )
    return budgets
