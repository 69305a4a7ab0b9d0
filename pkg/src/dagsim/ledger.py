"""Post-hoc total ordering, first-inclusion rewards, and collision metrics.

Blocks are totally ordered by (mined_at, id); the simulator owns a global
clock, so the DAG-level ordering problem collapses to timestamp order. A
transaction's full fee goes to the miner of the first block (in that order)
that includes it; later inclusions earn nothing. Reward decay for
late-connected blocks is fixed at factor 1 (no penalty), which is the
honest-optimistic setting; ``attribute_rewards`` accepts an alternative
weakly-decreasing discount hook but nothing in the shipped experiments uses
one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping

from .domain import Block, MinerSpec

__all__ = [
    "OrderedLedger",
    "MetricsReport",
    "LedgerError",
    "DuplicateBlockId",
    "UnknownTransactionFee",
    "ZeroTotalReward",
    "total_order",
    "attribute_rewards",
    "profit_factor",
    "collision_metrics",
    "averaged_profit_factor",
]


class LedgerError(ValueError):
    pass


class DuplicateBlockId(LedgerError):
    pass


class UnknownTransactionFee(LedgerError):
    pass


class ZeroTotalReward(LedgerError):
    pass


@dataclass(slots=True)
class OrderedLedger:
    """Blocks in canonical order plus (once attributed) reward bookkeeping."""

    blocks: list[Block]
    reward_of: dict[str, float] = field(default_factory=dict)
    first_inclusion: dict[int, int] = field(default_factory=dict)


@dataclass(slots=True)
class MetricsReport:
    """Collision statistics; ``throughput_ratio`` is exactly 1 - collision_rate."""

    profit_factor: dict[str, float]
    collision_rate: float
    throughput_ratio: float
    duplicate_inclusions: int
    total_inclusions: int


def total_order(blocks: Iterable[Block]) -> OrderedLedger:
    """Sort blocks by (mined_at, id); block ids must be unique."""
    ordered = sorted(blocks, key=lambda b: (b.mined_at, b.id))
    seen: set[int] = set()
    for b in ordered:
        if b.id in seen:
            raise DuplicateBlockId(f"block id {b.id} appears more than once")
        seen.add(b.id)
    return OrderedLedger(ordered)


def attribute_rewards(
    ordered: OrderedLedger,
    fee_of: Mapping[int, float],
    discount: Callable[[Block], float] | None = None,
) -> OrderedLedger:
    """Credit each transaction's fee to the miner of its first inclusion.

    ``discount``, if given, maps a block to a factor in [0, 1] applied to the
    fees it earns; the default is the constant 1.
    """
    rewards: dict[str, float] = {}
    first: dict[int, int] = {}
    for block in ordered.blocks:
        rewards.setdefault(block.miner, 0.0)
        factor = 1.0 if discount is None else discount(block)
        earned = 0.0
        for tx_id in block.txs:
            if tx_id in first:
                continue  # duplicate inclusion, already rewarded
            fee = fee_of.get(tx_id)
            if fee is None:
                raise UnknownTransactionFee(f"no fee known for transaction {tx_id}")
            first[tx_id] = block.id
            earned += fee
        rewards[block.miner] += factor * earned
    return OrderedLedger(ordered.blocks, rewards, first)


def profit_factor(ordered: OrderedLedger, miners: list[MinerSpec]) -> dict[str, float]:
    """Reward share divided by power share, for every miner with power > 0.

    1.0 is the fair baseline; relays (power 0) are excluded.
    """
    total = sum(ordered.reward_of.values())
    if total <= 0:
        raise ZeroTotalReward("profit factor undefined: total rewards are zero")
    return {
        m.id: (ordered.reward_of.get(m.id, 0.0) / total) / m.power
        for m in miners
        if m.power > 0
    }


def collision_metrics(ordered: OrderedLedger) -> MetricsReport:
    """Duplicate-inclusion counts over the ordered blocks."""
    total = 0
    distinct: set[int] = set()
    for block in ordered.blocks:
        total += len(block.txs)
        distinct.update(block.txs)
    duplicates = total - len(distinct)
    rate = duplicates / total if total else 0.0
    return MetricsReport(
        profit_factor={},
        collision_rate=rate,
        throughput_ratio=1.0 - rate,
        duplicate_inclusions=duplicates,
        total_inclusions=total,
    )


def averaged_profit_factor(
    reports: Iterable[Mapping[str, float]],
    group: Iterable[str],
) -> float:
    """Mean profit factor over the miners in ``group`` and over runs."""
    group = list(group)
    values = [report[miner] for report in reports for miner in group]
    if not values:
        raise LedgerError("averaged_profit_factor needs at least one report and miner")
    return sum(values) / len(values)
