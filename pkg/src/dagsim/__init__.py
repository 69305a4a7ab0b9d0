"""dagsim: a discrete-event simulator for studying fee-greedy transaction
selection against randomized selection in DAG-style PoW networks, plus an
exact analyzer for the associated symmetric 2x2 repeated game."""

from .domain import (
    Block,
    CapacityExceedsMempool,
    ConfigError,
    FeeModel,
    MinerSpec,
    NonPositiveInterval,
    PowerSumInvalid,
    SimConfig,
    Transaction,
    UnknownNode,
    validate_config,
)
from .engine import (
    MinerState,
    SimulationTrace,
    pick_miner,
    read_trace,
    run,
    sample_inter_block_time,
    write_trace,
)
from .gametheory import (
    BaseGame,
    MixedEquilibrium,
    best_response_to_mixed,
    classify,
    discounted_payoff,
    grim_trigger_compare,
    min_discount_factor,
    mixed_nash_2x2,
    pure_nash,
    strictly_dominates,
)
from .harness import EXPERIMENTS, run_custom, run_experiment, write_csvs
from .ledger import (
    MetricsReport,
    OrderedLedger,
    attribute_rewards,
    averaged_profit_factor,
    collision_metrics,
    profit_factor,
    total_order,
)
from .mempool import Mempool
from .network import (
    Topology,
    build_core_edge,
    build_delay_model,
    build_fully_connected,
    build_line,
    build_ring,
    propagation_delays,
)
from .strategy import StrategyDescriptor, parse_strategy, select

__version__ = "0.1.0"
