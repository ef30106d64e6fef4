"""Seeded experiment engine: trial batches, parameter sweeps, BS planning.

Trial ``i`` of a point draws its topology from substream ``(seed, i, 0)`` and
its channel randomness from ``(seed, i, 1)``, so results are independent of
execution order and match the composed per-trial pipeline
(``sample_deployment`` -> ``evaluate_links`` -> ``associate``) draw for draw.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum
from statistics import NormalDist
from typing import Optional

import numpy as np

from . import _kernels
from .association import Policy
from .channel import ChannelParams
from .errors import ConfigurationError
from .geometry import Architecture, BandType, DeploymentSpec
from .metrics import CostModel, KpiAggregate, _aggregate_arrays
from .seeding import SeedLike, entropy_path

GEOM_STREAM = 0
CHAN_STREAM = 1

NUM_BS_PER_BAND = "per_band"
NUM_BS_TOTAL = "total"


class SweepVariable(Enum):
    ABSORPTION_K = "AbsorptionK"
    NUM_BS = "NumBs"
    THZ_BANDWIDTH = "ThzBandwidth"
    TARGET_RATE = "TargetRate"


_VARIABLE_CODE = {v: i for i, v in enumerate(SweepVariable)}


@dataclass(frozen=True)
class SweepPlan:
    """One-dimensional sweep: evaluate every policy at every value."""

    variable: SweepVariable
    values: tuple[float, ...]
    base_params: ChannelParams
    base_spec: DeploymentSpec
    policies: tuple[Policy, ...]
    trials_per_point: int = 10_000
    master_seed: int = 0
    costs: CostModel = CostModel()
    num_bs_mode: str = NUM_BS_PER_BAND

    def __post_init__(self):
        problems = []
        values = tuple(self.values)
        if not values:
            problems.append("values must not be empty")
        elif any(not math.isfinite(v) for v in values):
            problems.append("values must be finite")
        elif any(b <= a for a, b in zip(values, values[1:])):
            problems.append("values must be strictly increasing")
        if not self.policies:
            problems.append("policies must not be empty")
        if self.trials_per_point < 1:
            problems.append("trials_per_point must be at least 1")
        if self.num_bs_mode not in (NUM_BS_PER_BAND, NUM_BS_TOTAL):
            problems.append(f"num_bs_mode must be per_band or total (got {self.num_bs_mode!r})")
        if problems:
            raise ConfigurationError(problems)


@dataclass(frozen=True)
class SweepRow:
    value: float
    policy: Policy
    architecture: Architecture
    aggregate: KpiAggregate
    spec: DeploymentSpec
    params: ChannelParams


def _station_capabilities(spec: DeploymentSpec) -> tuple[np.ndarray, np.ndarray]:
    layout = spec.band_layout()
    rf = np.array([b in (BandType.RF, BandType.HYBRID) for b in layout], dtype=np.uint8)
    thz = np.array([b in (BandType.THZ, BandType.HYBRID) for b in layout], dtype=np.uint8)
    return rf, thz


def _draw_batch(spec: DeploymentSpec, params: ChannelParams, trials: int, seed: SeedLike):
    """Draw all trial randomness, one substream pair per trial.

    The stream consumption per trial matches ``sample_deployment`` and
    ``evaluate_links`` exactly: station radii, station angles, user radius,
    user angle on the geometry stream; fading, then alignment uniforms on the
    channel stream.
    """
    n = spec.n_total
    radius = spec.region_radius
    pos_x = np.empty((trials, n))
    pos_y = np.empty((trials, n))
    user_x = np.empty(trials)
    user_y = np.empty(trials)
    fading = np.empty((trials, n))
    aligned = np.empty((trials, n), dtype=np.uint8)
    base = entropy_path(seed)
    for i in range(trials):
        geom = np.random.default_rng(base + [i, GEOM_STREAM])
        radii = radius * np.sqrt(geom.random(n))
        angles = 2.0 * math.pi * geom.random(n)
        pos_x[i] = radii * np.cos(angles)
        pos_y[i] = radii * np.sin(angles)
        user_r = radius * math.sqrt(geom.random())
        user_a = 2.0 * math.pi * geom.random()
        user_x[i] = user_r * math.cos(user_a)
        user_y[i] = user_r * math.sin(user_a)
        chan = np.random.default_rng(base + [i, CHAN_STREAM])
        fading[i] = chan.exponential(1.0, n)
        aligned[i] = chan.random(n) < params.p_align
    return pos_x, pos_y, user_x, user_y, fading, aligned


def _serving_stats(budgets: _kernels.BatchBudgets, policy: Policy, params: ChannelParams):
    """Argmax the policy score per trial; ties resolve to the lowest index."""
    if policy is Policy.MAX_RATE:
        score = budgets.rate
    elif policy is Policy.MAX_SINR:
        score = budgets.sinr
    elif policy is Policy.MAX_RSRP:
        score = budgets.rx
    elif policy is Policy.BIASED:
        cand_dist = budgets.dist[:, budgets.cand_station]
        score = np.where(
            budgets.cand_is_thz,
            params.b_thz * budgets.rx * np.exp(params.k_abs * cand_dist),
            params.b_rf * budgets.rx,
        )
    else:
        raise TypeError(f"unknown policy {policy!r}")
    idx = np.argmax(score, axis=1)
    rows = np.arange(idx.size)
    served_thz = budgets.cand_is_thz[idx]
    rates = budgets.rate[rows, idx]
    ses = np.log2(1.0 + budgets.sinr[rows, idx])
    return served_thz, rates, ses


def _point_budgets(
    spec: DeploymentSpec,
    params: ChannelParams,
    trials: int,
    seed: SeedLike,
    backend: Optional[str] = None,
) -> _kernels.BatchBudgets:
    if trials < 1:
        raise ConfigurationError("trials must be at least 1")
    pos_x, pos_y, user_x, user_y, fading, aligned = _draw_batch(spec, params, trials, seed)
    rf_capable, thz_capable = _station_capabilities(spec)
    return _kernels.link_budget_batch(
        pos_x, pos_y, user_x, user_y, fading, aligned,
        rf_capable, thz_capable, params, backend=backend,
    )


def run_point(
    spec: DeploymentSpec,
    params: ChannelParams,
    policy: Policy,
    trials: int,
    seed: SeedLike,
    *,
    costs: CostModel = CostModel(),
    backend: Optional[str] = None,
) -> KpiAggregate:
    """Run ``trials`` independent seeded trials and aggregate their KPIs."""
    budgets = _point_budgets(spec, params, trials, seed, backend)
    served_thz, rates, ses = _serving_stats(budgets, policy, params)
    return _aggregate_arrays(served_thz, rates, ses, spec, costs)


def sweep_point_seed(master_seed: SeedLike, variable: SweepVariable, value: float) -> list[int]:
    """Entropy path for one sweep point; depends only on the point itself, so
    inserting or removing other sweep values never perturbs existing rows."""
    bits = int(np.float64(value).view(np.uint64))
    return entropy_path(master_seed, _VARIABLE_CODE[variable], bits)


def _spec_with_count(spec: DeploymentSpec, count: int, mode: str) -> DeploymentSpec:
    if spec.architecture is Architecture.INT:
        return replace(spec, n_hyb=count)
    if mode == NUM_BS_PER_BAND:
        return replace(spec, n_rf=count, n_thz=count)
    # total split: THz gets the odd station, mirroring the planner tie-break
    return replace(spec, n_rf=count // 2, n_thz=count - count // 2)


def _point_config(plan: SweepPlan, value: float) -> tuple[DeploymentSpec, ChannelParams]:
    if plan.variable is SweepVariable.ABSORPTION_K:
        return plan.base_spec, replace(plan.base_params, k_abs=float(value))
    if plan.variable is SweepVariable.THZ_BANDWIDTH:
        return plan.base_spec, replace(plan.base_params, b_thz=float(value))
    if plan.variable is SweepVariable.NUM_BS:
        count = int(value)
        if count != value:
            raise ConfigurationError(f"NumBs sweep values must be integers (got {value!r})")
        return _spec_with_count(plan.base_spec, count, plan.num_bs_mode), plan.base_params
    raise ConfigurationError(
        "TargetRate sweeps produce planner results; use required_bs or plan_deployment"
    )


def run_sweep(plan: SweepPlan) -> list[SweepRow]:
    """Evaluate the plan; returns |values| x |policies| rows in sweep order.

    Policies share each point's seed, so policy comparisons at a value are
    paired over identical network realizations.
    """
    rows = []
    for value in plan.values:
        spec_v, params_v = _point_config(plan, value)
        seed = sweep_point_seed(plan.master_seed, plan.variable, value)
        # policies share the point seed, so the batch is drawn once per value
        budgets = _point_budgets(spec_v, params_v, plan.trials_per_point, seed)
        for policy in plan.policies:
            served_thz, rates, ses = _serving_stats(budgets, policy, params_v)
            agg = _aggregate_arrays(served_thz, rates, ses, spec_v, plan.costs)
            rows.append(
                SweepRow(
                    value=float(value),
                    policy=policy,
                    architecture=spec_v.architecture,
                    aggregate=agg,
                    spec=spec_v,
                    params=params_v,
                )
            )
    return rows


class PlannerMode(Enum):
    INT_MBN = "IntMBN"
    SA_EQUAL = "SaEqual"
    SA_FLEXIBLE = "SaFlexible"


_ARCH_CODE = {Architecture.SA: 0, Architecture.INT: 1}


@dataclass(frozen=True)
class RequiredBs:
    """Planner answer for one mode at one target rate.

    ``feasible`` is False when the search bound was exhausted; the count
    fields are then None. ``rate_lcb`` is the one-sided lower confidence
    bound the feasibility decision used.
    """

    mode: PlannerMode
    target_rate: float
    feasible: bool
    n_rf: Optional[int]
    n_thz: Optional[int]
    n_hyb: Optional[int]
    n_total: Optional[int]
    mean_rate: Optional[float]
    rate_lcb: Optional[float]


@dataclass(frozen=True)
class PlannerResult:
    """Per-target summary across the three planner modes.

    ``n_required_sa_equal`` is the per-band count (the deployment uses that
    many RF plus that many THz stations); ``n_required_sa_fn`` is the
    (n_rf, n_thz) split of smallest total. None marks an infeasible search.
    """

    target_rate: float
    n_required_int: Optional[int]
    n_required_sa_equal: Optional[int]
    n_required_sa_fn: Optional[tuple[int, int]]

    def __post_init__(self):
        if self.n_required_sa_equal is not None and self.n_required_sa_fn is not None:
            if sum(self.n_required_sa_fn) > 2 * self.n_required_sa_equal:
                raise ConfigurationError(
                    "flexible-split total exceeds the equal-split total; "
                    "searches must share their rate estimates"
                )


class _RateEstimator:
    """Memoized mean-rate estimates per station layout.

    Cache keys ignore the target rate, so one estimator can serve a whole
    target sweep; feasibility thresholds then scan fixed numbers, which makes
    required counts nondecreasing in the target by construction.
    """

    def __init__(self, params, confidence, trials, seed, region_radius, policy, costs):
        if not 0.0 < confidence < 1.0:
            raise ConfigurationError(f"confidence must lie in (0, 1) (got {confidence!r})")
        if trials < 1:
            raise ConfigurationError("trials must be at least 1")
        self.params = params
        self.trials = trials
        self.seed = seed
        self.region_radius = region_radius
        self.policy = policy
        self.costs = costs
        self._z_conf = NormalDist().inv_cdf(confidence)
        self._z95 = NormalDist().inv_cdf(0.975)
        self._cache: dict[tuple, tuple[float, float]] = {}

    def estimate(self, spec: DeploymentSpec) -> tuple[float, float]:
        key = (spec.architecture, spec.n_rf, spec.n_thz, spec.n_hyb)
        if key not in self._cache:
            seed = entropy_path(
                self.seed, _ARCH_CODE[spec.architecture], spec.n_rf, spec.n_thz, spec.n_hyb
            )
            agg = run_point(
                spec, self.params, self.policy, self.trials, seed, costs=self.costs
            )
            stderr = agg.ci95_rate / self._z95
            self._cache[key] = (agg.mean_rate, agg.mean_rate - self._z_conf * stderr)
        return self._cache[key]


def _sa_spec(n_rf: int, n_thz: int, radius: float) -> DeploymentSpec:
    return DeploymentSpec(Architecture.SA, n_rf=n_rf, n_thz=n_thz, region_radius=radius)


def _search_mode(mode: PlannerMode, target: float, est: _RateEstimator, n_max: int) -> RequiredBs:
    radius = est.region_radius
    if mode is PlannerMode.INT_MBN:
        for n in range(1, n_max + 1):
            spec = DeploymentSpec(Architecture.INT, n_hyb=n, region_radius=radius)
            mean, lcb = est.estimate(spec)
            if lcb >= target:
                return RequiredBs(mode, target, True, 0, 0, n, n, mean, lcb)
    elif mode is PlannerMode.SA_EQUAL:
        for n in range(1, n_max + 1):
            mean, lcb = est.estimate(_sa_spec(n, n, radius))
            if lcb >= target:
                return RequiredBs(mode, target, True, n, n, 0, 2 * n, mean, lcb)
    elif mode is PlannerMode.SA_FLEXIBLE:
        # ascending totals; within a total, larger THz share first (tie-break)
        for total in range(1, 2 * n_max + 1):
            for n_thz in range(total, -1, -1):
                mean, lcb = est.estimate(_sa_spec(total - n_thz, n_thz, radius))
                if lcb >= target:
                    return RequiredBs(
                        mode, target, True, total - n_thz, n_thz, 0, total, mean, lcb
                    )
    else:
        raise TypeError(f"unknown planner mode {mode!r}")
    return RequiredBs(mode, target, False, None, None, None, None, None, None)


def required_bs(
    target_rate: float,
    mode: PlannerMode,
    params: ChannelParams,
    confidence: float = 0.95,
    trials: int = 10_000,
    n_max: int = 60,
    seed: SeedLike = 0,
    *,
    region_radius: float = 400.0,
    policy: Policy = Policy.MAX_RATE,
    costs: CostModel = CostModel(),
) -> RequiredBs:
    """Smallest deployment whose lower-confidence-bound mean rate meets the
    target.

    ``n_max`` bounds the per-band count for IntMBN/SaEqual and half the total
    for SaFlexible, so the flexible search space always contains the equal
    split. Exhausting the bound returns an infeasible result, not an error.
    Estimates are seeded per station layout (never per target), so repeated
    calls with increasing targets see consistent numbers.
    """
    if not (isinstance(target_rate, (int, float)) and math.isfinite(target_rate)) or target_rate < 0:
        raise ConfigurationError(f"target_rate must be non-negative and finite (got {target_rate!r})")
    if n_max < 1:
        raise ConfigurationError("n_max must be at least 1")
    est = _RateEstimator(params, confidence, trials, seed, region_radius, policy, costs)
    return _search_mode(mode, target_rate, est, n_max)


def plan_required_bs(
    targets,
    modes,
    params: ChannelParams,
    confidence: float = 0.95,
    trials: int = 10_000,
    n_max: int = 60,
    seed: SeedLike = 0,
    *,
    region_radius: float = 400.0,
    policy: Policy = Policy.MAX_RATE,
    costs: CostModel = CostModel(),
) -> list[RequiredBs]:
    """Planner searches over a target-rate sweep, sharing one estimate cache.

    Returns one entry per (target, mode), targets outermost, in input order.
    """
    if n_max < 1:
        raise ConfigurationError("n_max must be at least 1")
    est = _RateEstimator(params, confidence, trials, seed, region_radius, policy, costs)
    entries = []
    for target in targets:
        if not (isinstance(target, (int, float)) and math.isfinite(target)) or target < 0:
            raise ConfigurationError(f"target_rate must be non-negative and finite (got {target!r})")
        for mode in modes:
            entries.append(_search_mode(mode, float(target), est, n_max))
    return entries


def plan_deployment(
    targets,
    params: ChannelParams,
    confidence: float = 0.95,
    trials: int = 10_000,
    n_max: int = 60,
    seed: SeedLike = 0,
    *,
    region_radius: float = 400.0,
    policy: Policy = Policy.MAX_RATE,
    costs: CostModel = CostModel(),
) -> list[PlannerResult]:
    """Required-BS curves over a target-rate sweep, one result per target."""
    entries = plan_required_bs(
        targets, tuple(PlannerMode), params, confidence, trials, n_max, seed,
        region_radius=region_radius, policy=policy, costs=costs,
    )
    results = []
    for i in range(0, len(entries), len(PlannerMode)):
        by_mode = {entry.mode: entry for entry in entries[i : i + len(PlannerMode)]}
        int_entry = by_mode[PlannerMode.INT_MBN]
        equal_entry = by_mode[PlannerMode.SA_EQUAL]
        flex_entry = by_mode[PlannerMode.SA_FLEXIBLE]
        results.append(
            PlannerResult(
                target_rate=int_entry.target_rate,
                n_required_int=int_entry.n_hyb if int_entry.feasible else None,
                n_required_sa_equal=equal_entry.n_rf if equal_entry.feasible else None,
                n_required_sa_fn=(
                    (flex_entry.n_rf, flex_entry.n_thz) if flex_entry.feasible else None
                ),
            )
        )
    return results
