"""Core value types shared by every part of the simulator.

Everything here is immutable after construction and therefore safe to share
across worker processes. Transactions and blocks enforce their own hard
invariants at construction time; run-level configuration (`SimConfig`,
`MinerSpec`) is deliberately constructible in invalid states so that
`validate_config` can act as the single gatekeeper.
"""

from __future__ import annotations

from dataclasses import dataclass

from .strategy import StrategyDescriptor

__all__ = [
    "Transaction",
    "Block",
    "MinerSpec",
    "FeeModel",
    "SimConfig",
    "validate_config",
    "ConfigError",
    "PowerSumInvalid",
    "CapacityExceedsMempool",
    "UnknownNode",
    "NonPositiveInterval",
    "POWER_SUM_TOLERANCE",
]

POWER_SUM_TOLERANCE = 1e-9


class ConfigError(ValueError):
    """A configuration violates one of the documented invariants."""


class PowerSumInvalid(ConfigError):
    """Mining powers are negative or do not sum to 1."""


class CapacityExceedsMempool(ConfigError):
    """Block capacity is larger than the mempool refill target."""


class UnknownNode(ConfigError):
    """A miner references a node that is not part of the topology."""


class NonPositiveInterval(ConfigError):
    """A time interval (block interval, injection period) is not positive."""


@dataclass(frozen=True, slots=True)
class Transaction:
    """A fee-bearing unit of work. Identity (``id``) drives duplicate detection."""

    id: int
    fee: float
    created_at: float

    def __post_init__(self) -> None:
        if self.fee < 0:
            raise ValueError(f"transaction {self.id}: fee must be >= 0, got {self.fee}")


@dataclass(frozen=True, slots=True)
class Block:
    """A miner-attributed container of transaction ids with a creation timestamp."""

    id: int
    miner: str
    txs: tuple[int, ...]
    mined_at: float
    capacity: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "txs", tuple(self.txs))
        if self.capacity < 1:
            raise ValueError(f"block {self.id}: capacity must be >= 1")
        if len(self.txs) > self.capacity:
            raise ValueError(
                f"block {self.id}: {len(self.txs)} transactions exceed capacity {self.capacity}"
            )
        if len(set(self.txs)) != len(self.txs):
            raise ValueError(f"block {self.id}: repeated transaction id within block")
        if self.mined_at < 0:
            raise ValueError(f"block {self.id}: mined_at must be >= 0")


@dataclass(frozen=True, slots=True)
class MinerSpec:
    """One mining agent: its power share, selection strategy, and host node.

    Relay-only participants are expressed as miners with power 0; they keep a
    mempool and receive blocks but are never picked to mine.
    """

    id: str
    power: float
    strategy: StrategyDescriptor
    node: int


@dataclass(frozen=True, slots=True)
class FeeModel:
    """Fee distribution for injected transactions.

    kind ``"exponential"``: i.i.d. draws with mean ``value``.
    kind ``"fixed"``: every transaction carries fee ``value`` (the flat-fee
    countermeasure; ``value`` may be 0, which degenerates reward attribution).
    """

    kind: str
    value: float

    EXPONENTIAL = "exponential"
    FIXED = "fixed"

    def draw(self, rng) -> float:
        if self.kind == FeeModel.FIXED:
            return self.value
        return rng.expovariate(1.0 / self.value)

    def describe(self) -> str:
        return f"{self.kind}:{self.value!r}"

    @classmethod
    def parse(cls, text: str) -> "FeeModel":
        kind, _, value = text.partition(":")
        kind = kind.strip().lower()
        if kind not in (cls.EXPONENTIAL, cls.FIXED):
            raise ConfigError(f"unknown fee model {text!r}")
        return cls(kind, float(value) if value else 1.0)


@dataclass(frozen=True, slots=True)
class SimConfig:
    """Parameters of one simulation run.

    ``tx_injection_period`` is either a fixed period in seconds or a
    ``(lo, hi)`` pair, in which case each gap is drawn uniformly from the
    range. ``runs`` is the repetition count used by the experiment harness;
    a single ``run()`` call always executes exactly one run.
    """

    block_interval: float
    block_capacity: int
    mempool_target: int
    tx_injection_period: float | tuple[float, float]
    fee_model: FeeModel
    duration: float
    seed: int
    runs: int = 1


def _check_fee_model(model: FeeModel) -> None:
    if model.kind not in (FeeModel.EXPONENTIAL, FeeModel.FIXED):
        raise ConfigError(f"unknown fee model kind {model.kind!r}")
    if model.kind == FeeModel.EXPONENTIAL and model.value <= 0:
        raise ConfigError("exponential fee model needs a positive mean")
    if model.kind == FeeModel.FIXED and model.value < 0:
        raise ConfigError("fixed fee model needs a non-negative value")


def validate_config(cfg: SimConfig, miners: list[MinerSpec], topo) -> SimConfig:
    """Check every configuration invariant; return ``cfg`` or raise naming the first violation.

    ``duration`` 0 is accepted (it yields an empty trace); negative durations
    are rejected.
    """
    if cfg.block_interval <= 0:
        raise NonPositiveInterval(f"block_interval must be > 0, got {cfg.block_interval}")
    if cfg.block_capacity < 1:
        raise ConfigError(f"block_capacity must be >= 1, got {cfg.block_capacity}")
    if cfg.mempool_target < cfg.block_capacity:
        raise CapacityExceedsMempool(
            f"mempool_target {cfg.mempool_target} is below block_capacity {cfg.block_capacity}"
        )
    period = cfg.tx_injection_period
    if isinstance(period, tuple):
        if len(period) != 2 or period[0] <= 0 or period[0] > period[1]:
            raise NonPositiveInterval(f"injection period range {period!r} is invalid")
    elif period <= 0:
        raise NonPositiveInterval(f"injection period must be > 0, got {period}")
    _check_fee_model(cfg.fee_model)
    if cfg.duration < 0:
        raise ConfigError(f"duration must be >= 0, got {cfg.duration}")
    if cfg.runs < 1:
        raise ConfigError(f"runs must be >= 1, got {cfg.runs}")

    if not miners:
        raise ConfigError("at least one miner is required")
    seen_ids = set()
    total_power = 0.0
    for m in miners:
        if m.id in seen_ids:
            raise ConfigError(f"duplicate miner id {m.id!r}")
        seen_ids.add(m.id)
        if m.power < 0:
            raise PowerSumInvalid(f"miner {m.id!r} has negative power {m.power}")
        total_power += m.power
        if m.node not in topo.nodes:
            raise UnknownNode(f"miner {m.id!r} is hosted on unknown node {m.node}")
    if abs(total_power - 1.0) > POWER_SUM_TOLERANCE:
        raise PowerSumInvalid(f"miner powers sum to {total_power!r}, expected 1")
    return cfg
