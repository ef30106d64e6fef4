"""Monte Carlo simulator and deployment planner for RF/THz multi-band
wireless networks.

Stand-alone deployments (dedicated RF and THz stations) and integrated
deployments (dual-band hybrid stations) are compared on data rate, spectral
efficiency, THz association probability, required station counts, and
deployment cost efficiency, under four user-association policies including
an absorption-aware bandwidth-weighted bias.
"""

__version__ = "0.1.0"

from .association import AssociationOutcome, Policy, associate, bias_score, policy_score
from .channel import (
    SPEED_OF_LIGHT,
    ChannelParams,
    LinkBudget,
    evaluate_links,
    rx_power_rf,
    rx_power_thz,
    thermal_noise,
)
from .errors import ConfigurationError, DomainError, MbnError
from .geometry import (
    Architecture,
    BandType,
    Deployment,
    DeploymentSpec,
    Station,
    distance,
    sample_deployment,
)
from .metrics import CostModel, KpiAggregate, aggregate, dce_int, dce_sa, spectral_efficiency
from .montecarlo import (
    PlannerMode,
    PlannerResult,
    RequiredBs,
    SweepPlan,
    SweepRow,
    SweepVariable,
    plan_deployment,
    plan_required_bs,
    required_bs,
    run_point,
    run_sweep,
    sweep_point_seed,
)

__all__ = [
    "__version__",
    "SPEED_OF_LIGHT",
    "Architecture",
    "AssociationOutcome",
    "BandType",
    "ChannelParams",
    "ConfigurationError",
    "CostModel",
    "Deployment",
    "DeploymentSpec",
    "DomainError",
    "KpiAggregate",
    "LinkBudget",
    "MbnError",
    "PlannerMode",
    "PlannerResult",
    "Policy",
    "RequiredBs",
    "Station",
    "SweepPlan",
    "SweepRow",
    "SweepVariable",
    "aggregate",
    "associate",
    "bias_score",
    "dce_int",
    "dce_sa",
    "distance",
    "evaluate_links",
    "plan_deployment",
    "plan_required_bs",
    "policy_score",
    "required_bs",
    "run_point",
    "run_sweep",
    "rx_power_rf",
    "rx_power_thz",
    "sample_deployment",
    "spectral_efficiency",
    "sweep_point_seed",
    "thermal_noise",
]
