"""Transaction-selection policies that fill a block from a mempool snapshot.

Three policies exist:

* ``rts``     protocol-honest uniform random sampling without replacement,
* ``greedy``  the deviating policy that takes the highest-fee transactions,
* ``hybrid``  a fixed fraction of the block filled greedily, the rest randomly
              (the scheme used by throughput-oriented deployments that reserve
              a small priority area per block).

Selection always operates on an immutable snapshot of the selecting miner's
mempool; the engine guarantees nothing mutates the view mid-selection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = [
    "RTS",
    "GREEDY",
    "HYBRID",
    "DEFAULT_HYBRID_PRIORITY_FRACTION",
    "StrategyDescriptor",
    "parse_strategy",
    "select",
]

RTS = "rts"
GREEDY = "greedy"
HYBRID = "hybrid"

# The deployed hybrid schemes only say "a small fraction" of the block is
# fee-prioritized; 0.1 is the configurable default.
DEFAULT_HYBRID_PRIORITY_FRACTION = 0.1


@dataclass(frozen=True, slots=True)
class StrategyDescriptor:
    """Named selection policy; ``priority_fraction`` only applies to hybrid."""

    kind: str
    priority_fraction: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in (RTS, GREEDY, HYBRID):
            raise ValueError(f"unknown strategy kind {self.kind!r}")
        if self.kind == HYBRID:
            f = self.priority_fraction
            if f is None or not (0.0 <= f <= 1.0):
                raise ValueError(f"hybrid priority fraction must be in [0, 1], got {f!r}")
        elif self.priority_fraction is not None:
            raise ValueError(f"{self.kind} takes no priority fraction")

    def describe(self) -> str:
        if self.kind == HYBRID:
            return f"hybrid:{self.priority_fraction!r}"
        return self.kind


def parse_strategy(text: str) -> StrategyDescriptor:
    """Parse ``"rts" | "greedy" | "hybrid:<fraction>"`` as used in config files."""
    text = text.strip().lower()
    if text == RTS:
        return StrategyDescriptor(RTS)
    if text == GREEDY:
        return StrategyDescriptor(GREEDY)
    if text == HYBRID:
        return StrategyDescriptor(HYBRID, DEFAULT_HYBRID_PRIORITY_FRACTION)
    if text.startswith(HYBRID + ":"):
        return StrategyDescriptor(HYBRID, float(text.split(":", 1)[1]))
    raise ValueError(f"unknown strategy {text!r}")


def select(strategy: StrategyDescriptor, mempool_view, capacity: int, rng) -> list[int]:
    """Pick up to ``capacity`` transaction ids from ``mempool_view``.

    The view must expose ``__len__``, ``top(k)`` (fee descending, ties by
    ascending id), ``sample(k, rng)`` (uniform without replacement) and
    ``sample_excluding(ids, k, rng)``. Always returns
    ``min(capacity, len(view))`` distinct ids; an empty mempool yields an
    empty list.
    """
    n = len(mempool_view)
    if capacity <= 0 or n == 0:
        return []
    k = min(capacity, n)
    if strategy.kind == GREEDY:
        return mempool_view.top(k)
    if strategy.kind == RTS:
        return mempool_view.sample(k, rng)
    # hybrid: ceil(fraction * capacity) greedy slots, the rest uniform over
    # whatever the greedy pass did not take
    prioritized = min(math.ceil(strategy.priority_fraction * capacity), k)
    head = mempool_view.top(prioritized)
    tail = mempool_view.sample_excluding(head, k - prioritized, rng)
    return head + tail
