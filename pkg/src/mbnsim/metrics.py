"""Aggregation of per-trial outcomes into network KPIs.

KPIs: probability of associating on the THz band, mean serving-link spectral
efficiency and data rate (with 95% normal-approximation confidence
half-widths), and deployment cost efficiency (spectral efficiency delivered
per dollar of station CAPEX plus, optionally, one OPEX period).
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .association import AssociationOutcome
from .channel import LinkBudget
from .errors import ConfigurationError, DomainError
from .geometry import Architecture, BandType, DeploymentSpec

_Z95 = statistics.NormalDist().inv_cdf(0.975)

_COST_FIELDS = ("capex_rbs", "capex_tbs", "capex_hyb", "opex_rbs", "opex_tbs", "opex_hyb")


@dataclass(frozen=True)
class CostModel:
    """Per-station CAPEX/OPEX figures in dollars."""

    capex_rbs: float = 33_000.0
    capex_tbs: float = 38_000.0
    capex_hyb: float = 48_000.0
    opex_rbs: float = 2_800.0
    opex_tbs: float = 2_700.0
    opex_hyb: float = 3_200.0
    include_opex: bool = True

    def __post_init__(self):
        problems = []
        for name in _COST_FIELDS:
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
                problems.append(f"{name} must be non-negative (got {value!r})")
        if problems:
            raise ConfigurationError(problems)

    @property
    def rbs_cost(self) -> float:
        return self.capex_rbs + (self.opex_rbs if self.include_opex else 0.0)

    @property
    def tbs_cost(self) -> float:
        return self.capex_tbs + (self.opex_tbs if self.include_opex else 0.0)

    @property
    def hyb_cost(self) -> float:
        return self.capex_hyb + (self.opex_hyb if self.include_opex else 0.0)


@dataclass(frozen=True)
class KpiAggregate:
    """KPIs over one batch of trials."""

    thz_assoc_prob: float
    mean_se: float
    mean_rate: float
    dce: float
    trials: int
    ci95_rate: float
    ci95_se: float

    def __post_init__(self):
        problems = []
        if not 0.0 <= self.thz_assoc_prob <= 1.0:
            problems.append(f"thz_assoc_prob must lie within [0, 1] (got {self.thz_assoc_prob!r})")
        for name in ("mean_se", "mean_rate", "dce", "ci95_rate", "ci95_se"):
            value = getattr(self, name)
            if not (isinstance(value, (int, float)) and math.isfinite(value) and value >= 0):
                problems.append(f"{name} must be finite and non-negative (got {value!r})")
        if self.trials < 1:
            problems.append(f"trials must be at least 1 (got {self.trials!r})")
        if problems:
            raise DomainError("; ".join(problems))


def spectral_efficiency(outcome: AssociationOutcome, links: list[LinkBudget]) -> float:
    """Serving-link spectral efficiency, bits/s/Hz."""
    return math.log2(1.0 + links[outcome.serving_index].sinr)


def dce_sa(n_rf: int, n_thz: int, se: float, costs: CostModel) -> float:
    """Cost efficiency of a stand-alone deployment: total stations times SE
    over total station cost."""
    if n_rf < 0 or n_thz < 0 or n_rf + n_thz < 1:
        raise ConfigurationError("dce_sa needs at least one station")
    denom = n_rf * costs.rbs_cost + n_thz * costs.tbs_cost
    if denom <= 0.0:
        raise ConfigurationError("station costs sum to zero; cost efficiency undefined")
    return (n_rf + n_thz) * se / denom


def dce_int(n_hyb: int, se: float, costs: CostModel) -> float:
    """Cost efficiency of an integrated deployment.

    Both bands of every hybrid count toward delivered capacity, hence the
    factor two. The station count cancels algebraically, so the reduced form
    is computed to keep the result exactly independent of ``n_hyb``.
    """
    if n_hyb < 1:
        raise ConfigurationError("dce_int needs at least one hybrid station")
    if costs.hyb_cost <= 0.0:
        raise ConfigurationError("hybrid station cost is zero; cost efficiency undefined")
    return 2.0 * se / costs.hyb_cost


def _halfwidth95(values: np.ndarray) -> float:
    if values.size < 2:
        return 0.0
    return float(_Z95 * values.std(ddof=1) / math.sqrt(values.size))


def _dce_for(spec: DeploymentSpec, se: float, costs: CostModel) -> float:
    if spec.architecture is Architecture.SA:
        return dce_sa(spec.n_rf, spec.n_thz, se, costs)
    return dce_int(spec.n_hyb, se, costs)


def _aggregate_arrays(
    served_thz: np.ndarray,
    rates: np.ndarray,
    ses: np.ndarray,
    spec: DeploymentSpec,
    costs: CostModel,
) -> KpiAggregate:
    mean_se = float(np.mean(ses))
    return KpiAggregate(
        thz_assoc_prob=float(np.mean(served_thz)),
        mean_se=mean_se,
        mean_rate=float(np.mean(rates)),
        dce=_dce_for(spec, mean_se, costs),
        trials=int(rates.size),
        ci95_rate=_halfwidth95(rates),
        ci95_se=_halfwidth95(ses),
    )


def aggregate(
    trial_records: Iterable[tuple[AssociationOutcome, LinkBudget]],
    spec: DeploymentSpec,
    costs: CostModel,
) -> KpiAggregate:
    """Fold ``(outcome, serving budget)`` records into a KpiAggregate.

    Accumulation is commutative: beyond floating-point rounding the result
    does not depend on record order, so parallel reducers may feed it.
    """
    records = list(trial_records)
    if not records:
        raise DomainError("cannot aggregate an empty record stream")
    served_thz = np.array([budget.band is BandType.THZ for _, budget in records], dtype=bool)
    rates = np.array([budget.rate for _, budget in records], dtype=np.float64)
    ses = np.array(
        [math.log2(1.0 + budget.sinr) for _, budget in records], dtype=np.float64
    )
    return _aggregate_arrays(served_thz, rates, ses, spec, costs)
