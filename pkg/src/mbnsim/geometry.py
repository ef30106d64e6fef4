"""Random network topologies: base-station and user placement for one trial.

Stations and the typical user are drawn independently and uniformly over a
disk of radius ``region_radius`` centered at the origin (a binomial point
process with fixed counts). All positions are planar, in meters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple

import numpy as np

from .errors import ConfigurationError
from .seeding import SeedLike, substream

Point = tuple[float, float]


class BandType(Enum):
    """Band(s) a station can transmit on."""

    RF = "RF"
    THZ = "THz"
    HYBRID = "Hybrid"


class Architecture(Enum):
    """Stand-alone (single-band stations) or integrated (dual-band hybrids)."""

    SA = "SA"
    INT = "Int"


class Station(NamedTuple):
    position: Point
    band: BandType


@dataclass(frozen=True)
class DeploymentSpec:
    """Station counts and region size for one network draw.

    SA deployments mix dedicated RF and THz stations (``n_hyb`` must stay 0);
    Int deployments consist solely of hybrid stations serving both bands.
    """

    architecture: Architecture
    n_rf: int = 0
    n_thz: int = 0
    n_hyb: int = 0
    region_radius: float = 400.0

    def __post_init__(self):
        problems = []
        for name in ("n_rf", "n_thz", "n_hyb"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or isinstance(value, bool):
                problems.append(f"{name} must be an integer (got {value!r})")
            elif value < 0:
                problems.append(f"{name} must be non-negative (got {value})")
        if not problems:
            if self.architecture is Architecture.SA:
                if self.n_hyb != 0:
                    problems.append("SA deployments must have n_hyb = 0")
                if self.n_rf + self.n_thz < 1:
                    problems.append("SA deployments need at least one station")
            elif self.architecture is Architecture.INT:
                if self.n_rf != 0 or self.n_thz != 0:
                    problems.append("Int deployments must have n_rf = n_thz = 0")
                if self.n_hyb < 1:
                    problems.append("Int deployments need at least one hybrid station")
            else:
                problems.append(f"unknown architecture {self.architecture!r}")
        radius = self.region_radius
        if not (isinstance(radius, (int, float)) and math.isfinite(radius) and radius > 0):
            problems.append(f"region_radius must be positive and finite (got {radius!r})")
        if problems:
            raise ConfigurationError(problems)

    @property
    def n_total(self) -> int:
        return self.n_rf + self.n_thz + self.n_hyb

    def band_layout(self) -> tuple[BandType, ...]:
        """Band of each station slot, in sampling order (RF block, then THz)."""
        if self.architecture is Architecture.SA:
            return (BandType.RF,) * self.n_rf + (BandType.THZ,) * self.n_thz
        return (BandType.HYBRID,) * self.n_hyb


@dataclass(frozen=True)
class Deployment:
    """One sampled topology: stations with their bands, plus the user."""

    stations: tuple[Station, ...]
    user: Point


def sample_deployment(spec: DeploymentSpec, seed: SeedLike) -> Deployment:
    """Draw a topology; a pure function of ``(spec, seed)``.

    The stream is consumed in a fixed order (station radii, station angles,
    user radius, user angle) so that batched trial engines can reproduce the
    exact same draws from the same substream.
    """
    rng = substream(seed)
    n = spec.n_total
    radii = spec.region_radius * np.sqrt(rng.random(n))
    angles = 2.0 * math.pi * rng.random(n)
    xs = radii * np.cos(angles)
    ys = radii * np.sin(angles)
    user_r = spec.region_radius * math.sqrt(rng.random())
    user_a = 2.0 * math.pi * rng.random()
    stations = tuple(
        Station((float(x), float(y)), band)
        for x, y, band in zip(xs, ys, spec.band_layout())
    )
    user = (user_r * math.cos(user_a), user_r * math.sin(user_a))
    return Deployment(stations=stations, user=user)


def distance(a: Point, b: Point) -> float:
    """Euclidean distance between two planar points, in meters."""
    return math.hypot(a[0] - b[0], a[1] - b[1])
