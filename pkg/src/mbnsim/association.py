"""User-association policies and serving-link selection."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .channel import ChannelParams, LinkBudget
from .errors import DomainError
from .geometry import BandType


class Policy(Enum):
    """Association metric used to rank candidate links."""

    MAX_RATE = "MaxRate"
    MAX_SINR = "MaxSinr"
    MAX_RSRP = "MaxRsrp"
    BIASED = "Biased"


@dataclass(frozen=True)
class AssociationOutcome:
    serving_index: int
    serving_band: BandType
    score: float


def bias_score(link: LinkBudget, params: ChannelParams) -> float:
    """Bandwidth-weighted received power, with absorption cancelled for THz.

    RF links score ``b_rf * rx_power``; THz links score
    ``b_thz * rx_power * exp(k_abs * d)``, which removes the molecular
    absorption term from the ranking so the THz candidates are compared by
    spreading loss alone. Only bandwidth, received power, and distance enter
    the score.
    """
    if link.band is BandType.THZ:
        return params.b_thz * link.rx_power * math.exp(params.k_abs * link.distance)
    return params.b_rf * link.rx_power


def policy_score(policy: Policy, link: LinkBudget, params: ChannelParams) -> float:
    if policy is Policy.MAX_RATE:
        return link.rate
    if policy is Policy.MAX_SINR:
        return link.sinr
    if policy is Policy.MAX_RSRP:
        return link.rx_power
    if policy is Policy.BIASED:
        return bias_score(link, params)
    raise TypeError(f"unknown policy {policy!r}")


def associate(policy: Policy, links: list[LinkBudget], params: ChannelParams) -> AssociationOutcome:
    """Pick the candidate with the highest policy score; ties go to the
    lowest index, and scores are compared exactly (no epsilon)."""
    if not links:
        raise DomainError("cannot associate over an empty candidate list")
    best_index = 0
    best_score = policy_score(policy, links[0], params)
    for i in range(1, len(links)):
        score = policy_score(policy, links[i], params)
        if score > best_score:
            best_index = i
            best_score = score
    return AssociationOutcome(
        serving_index=best_index,
        serving_band=links[best_index].band,
        score=best_score,
    )
