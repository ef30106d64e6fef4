"""Deterministic substream derivation for reproducible, order-independent trials.

Every random draw in the simulator flows through a ``numpy`` generator keyed
by an entropy path: the master seed followed by integer coordinates such as
the trial index and the stream role. Identical paths always produce identical
generators, regardless of execution order, which is what makes parallel
trial evaluation and cached planner estimates reproducible.
"""

from __future__ import annotations

from typing import Sequence, Union

import numpy as np

from .errors import ConfigurationError

SeedLike = Union[int, Sequence[int]]


def entropy_path(seed: SeedLike, *path: int) -> list[int]:
    """Normalize a seed plus coordinates into a SeedSequence entropy list."""
    if isinstance(seed, (int, np.integer)):
        base = [int(seed)]
    else:
        try:
            base = [int(s) for s in seed]
        except TypeError:
            raise ConfigurationError(
                f"seed must be an int or a sequence of ints (got {seed!r})"
            ) from None
    entropy = base + [int(p) for p in path]
    if any(s < 0 for s in entropy):
        raise ConfigurationError("seed entropy values must be non-negative")
    return entropy


def substream(seed: SeedLike, *path: int) -> np.random.Generator:
    """Generator for the given entropy path; a pure function of its inputs."""
    return np.random.default_rng(entropy_path(seed, *path))


def fold_seed(seed: SeedLike, *path: int) -> int:
    """Collapse an entropy path into a single unsigned 64-bit master seed."""
    seq = np.random.SeedSequence(entropy_path(seed, *path))
    return int(seq.generate_state(1, np.uint64)[0])
