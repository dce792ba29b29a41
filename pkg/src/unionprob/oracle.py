"""Independent ground-truth estimators used to validate the fast paths.

Both routines here are deliberately naive. The exhaustive enumerator is
the combinatorial-explosion baseline the rest of the package exists to
avoid; it must stay simple enough to be obviously correct, so it walks a
plain binary counter over all subsets with no pruning. The Monte Carlo
estimator uses a pinned generator (NumPy's PCG64) so every recorded
estimate is reproducible bit-for-bit from its seed.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .core import _as_count, as_probability_array
from .summation import NeumaierSum

__all__ = [
    "SUBSET_ENUMERATION_CAP",
    "MonteCarloEstimate",
    "subset_inclusion_exclusion",
    "bernoulli_monte_carlo",
]

SUBSET_ENUMERATION_CAP = 20


@dataclass(frozen=True)
class MonteCarloEstimate:
    """Seeded union-probability estimate with its binomial standard error."""

    estimate: float
    trials: int
    standard_error: float
    seed: int


def subset_inclusion_exclusion(probs: Sequence[float] | np.ndarray) -> float:
    """Union probability by literal inclusion-exclusion over all subsets.

    Sums ``(-1)**(|S|-1) * prod(p_i for i in S)`` over every non-empty
    subset ``S``, visiting subsets as a binary counter from 1 to
    ``2**n - 1`` and accumulating with compensated summation. Cost is
    ``O(2**n * n)``; refuses more than 20 events.
    """
    arr = as_probability_array(probs)
    n = arr.size
    if n > SUBSET_ENUMERATION_CAP:
        raise ValueError(
            f"exhaustive enumeration is capped at {SUBSET_ENUMERATION_CAP} events, got {n}"
        )
    p = arr.tolist()
    acc = NeumaierSum()
    for mask in range(1, 1 << n):
        product = 1.0
        size = 0
        for j in range(n):
            if mask >> j & 1:
                product *= p[j]
                size += 1
        acc.add(product if size % 2 == 1 else -product)
    return acc.value


def _shard_trial_counts(trials: int, shards: int) -> list[int]:
    base, extra = divmod(trials, shards)
    return [base + (1 if k < extra else 0) for k in range(shards)]


def bernoulli_monte_carlo(
    probs: Sequence[float] | np.ndarray,
    trials: int,
    seed: int,
    shards: int = 1,
) -> MonteCarloEstimate:
    """Estimate the union probability by simulating event rounds.

    Each round draws one uniform variate per event and counts as a hit if
    any variate falls below its event's probability. Draws come from
    ``numpy.random.PCG64`` seeded as given, so a (probs, trials, seed,
    shards) tuple always reproduces the same estimate on any platform.

    ``shards`` splits the trials into independently seeded batches (shard
    ``k`` uses ``seed ^ k``); the split depends only on (trials, shards),
    never on how the shards are executed, so a parallel runner that maps
    shards to workers gets the same answer as this sequential loop.
    """
    arr = as_probability_array(probs)
    trials = _as_count(trials, "trials")
    shards = _as_count(shards, "shards")
    if not 0 <= seed < 2**64:
        raise ValueError(f"seed must be an unsigned 64-bit integer, got {seed}")

    n = arr.size
    rows_per_chunk = max(1, (1 << 18) // n)
    hits = 0
    for k, shard_trials in enumerate(_shard_trial_counts(trials, shards)):
        rng = np.random.Generator(np.random.PCG64(seed ^ k))
        remaining = shard_trials
        while remaining > 0:
            rows = min(rows_per_chunk, remaining)
            # Uniform draws live in [0, 1), so p == 1 always scores and
            # p == 0 never does, matching the exact-arithmetic edge cases.
            u = rng.random((rows, n))
            hits += int((u < arr).any(axis=1).sum())
            remaining -= rows

    estimate = hits / trials
    standard_error = math.sqrt(estimate * (1.0 - estimate) / trials)
    return MonteCarloEstimate(estimate, trials, standard_error, seed)
