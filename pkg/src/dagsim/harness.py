"""Experiment definitions, multi-run orchestration, and CSV emission.

Every experiment is a sweep of points; each point is repeated ``runs`` times
with per-run seeds derived from the base seed. Run seeds are shared across
sweep points (common random numbers), which pairs runs between neighboring
points and sharpens the monotonicity comparisons the experiments are about.
Runs execute in a worker pool and return small per-run summaries; CSV
assembly is single-writer after all workers finish, so re-running with the
same seed produces byte-identical files.

The standard geometry mirrors the evaluation setup: a 10-node ring with a
1 s hop delay, 20 s mean block interval, 100-transaction blocks, and 10,000
transaction mempools refilled every 60 s. The large-network experiments use
a core/periphery graph with 7592 nodes (or ``n // scale`` in desk-scale
mode) and injection gaps drawn uniformly from 30-120 s.
"""

from __future__ import annotations

import configparser
import csv
import os
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .domain import FeeModel, MinerSpec, SimConfig
from .engine import derive_stream, run
from .ledger import attribute_rewards, collision_metrics, profit_factor, total_order
from .network import (
    Topology,
    build_core_edge,
    build_delay_model,
    build_fully_connected,
    build_line,
    build_ring,
)
from .strategy import GREEDY, RTS, StrategyDescriptor, parse_strategy

__all__ = [
    "EXPERIMENTS",
    "ExperimentDef",
    "ExperimentResult",
    "run_experiment",
    "run_custom",
    "parse_custom_config",
    "write_csvs",
    "experiment_names",
]

RING_NODES = 10
RING_HOP_DELAY = 1.0
BLOCK_INTERVAL = 20.0
BLOCK_CAPACITY = 100
MEMPOOL_TARGET = 10_000
INJECTION_PERIOD = 60.0
DEFAULT_RUNS = 10
DEFAULT_SEED = 1

DUEL_DURATION = 40_000.0
COLLISION_DURATION = 24_000.0
FLAT_FEE_DURATION = 50_000.0
COMPLEX_DURATION = 30_000.0
TOPOLOGY_STUDY_DURATION = 20_000.0

COMPLEX_NODES = 7592
COMPLEX_INJECTION = (30.0, 120.0)
COMPLEX_HOP_DELAYS = (0.5, 5.0)
COMPLEX_HONEST_MINERS = 9
TOPOLOGY_STUDY_NODES = 7000
TOPOLOGY_TARGET_DELAY = 5.0

# Ring positions: the duel miners sit at maximal distance (5 hops); the other
# eight nodes relay.
DUEL_GREEDY_NODE = 0
DUEL_HONEST_NODE = 5

_EXP_FEE = FeeModel(FeeModel.EXPONENTIAL, 1.0)
_FLAT_FEE = FeeModel(FeeModel.FIXED, 1.0)

_OVERRIDE_KEYS = (
    "duration",
    "block_interval",
    "block_capacity",
    "mempool_target",
    "injection_period",
    "fee_model",
)

# Placement knobs for the large-network experiments only.
_PLACEMENT_KEYS = ("greedy_placement", "honest_placement")

_SCALED_EXPERIMENTS = ("complex1", "complex2", "topology_study")


def _alphas(lo: int, hi: int) -> tuple[float, ...]:
    return tuple(round(0.1 * i, 1) for i in range(lo, hi + 1))


@dataclass(frozen=True)
class ExperimentDef:
    name: str
    description: str
    points: tuple[dict, ...]
    default_runs: int = DEFAULT_RUNS


@dataclass
class ExperimentResult:
    name: str
    seed: int
    runs: int
    scale: int
    profit_rows: list[dict] = field(default_factory=list)
    collision_rows: list[dict] = field(default_factory=list)
    summary_rows: list[dict] = field(default_factory=list)


def _points_complex() -> tuple[dict, ...]:
    single = tuple(
        {"scenario": "single", "alpha": a, "k": 1, "dtau": d}
        for d in COMPLEX_HOP_DELAYS
        for a in _alphas(1, 4)
    )
    multi = tuple(
        {"scenario": "multi", "alpha": 0.1, "k": k, "dtau": d}
        for d in COMPLEX_HOP_DELAYS
        for k in (2, 3, 4)
    )
    return single + multi


EXPERIMENTS: dict[str, ExperimentDef] = {
    "exp1_duel": ExperimentDef(
        "exp1_duel",
        "one greedy vs one honest miner on the 10-node ring, power sweep",
        tuple({"alpha": a} for a in _alphas(1, 9)),
    ),
    "exp2_multi_greedy": ExperimentDef(
        "exp2_multi_greedy",
        "k greedy vs 10-k honest miners, 10% power each",
        tuple({"k": k} for k in range(0, 11)),
    ),
    "exp3_pool_duel": ExperimentDef(
        "exp3_pool_duel",
        "greedy pool vs equal-power honest pool, honest rest spread over the ring",
        tuple({"alpha": a} for a in _alphas(1, 5)),
    ),
    "exp4_collision": ExperimentDef(
        "exp4_collision",
        "collision rate vs number of greedy miners for three block intervals",
        tuple(
            {"k": k, "block_interval": lam}
            for lam in (10.0, 20.0, 60.0)
            for k in range(0, 11)
        ),
    ),
    "complex1": ExperimentDef(
        "complex1",
        "profit factors on the large core/periphery network",
        _points_complex(),
    ),
    "complex2": ExperimentDef(
        "complex2",
        "collision rates on the large core/periphery network",
        _points_complex(),
    ),
    "topology_study": ExperimentDef(
        "topology_study",
        "greedy profit across line, core/periphery, and complete topologies",
        tuple(
            {"kind": kind, "alpha": a}
            for kind in ("line", "core_edge", "fully_connected")
            for a in _alphas(1, 4)
        ),
    ),
    "flat_fee_duel": ExperimentDef(
        "flat_fee_duel",
        "duel geometry with fixed transaction fees (countermeasure)",
        # alpha 0 is the all-honest baseline used by the collision comparison
        tuple({"alpha": a} for a in (0.0,) + _alphas(1, 9)),
    ),
    "flat_fee_multi": ExperimentDef(
        "flat_fee_multi",
        "one greedy vs nine honest miners with fixed transaction fees",
        tuple({"alpha": a} for a in (0.0,) + _alphas(1, 9)),
    ),
}


def experiment_names() -> list[str]:
    return sorted(EXPERIMENTS)


def _run_seed(base_seed: int, run_idx: int) -> int:
    # shared across sweep points on purpose (common random numbers)
    return base_seed * 1_000_003 + run_idx


def _config(duration: float, seed: int, overrides: dict, **kwargs) -> SimConfig:
    params = {
        "block_interval": BLOCK_INTERVAL,
        "block_capacity": BLOCK_CAPACITY,
        "mempool_target": MEMPOOL_TARGET,
        "tx_injection_period": INJECTION_PERIOD,
        "fee_model": _EXP_FEE,
        "duration": duration,
        "seed": seed,
    }
    params.update(kwargs)
    for key, value in overrides.items():
        if key == "duration":
            params["duration"] = float(value)
        elif key == "block_interval":
            params["block_interval"] = float(value)
        elif key == "block_capacity":
            params["block_capacity"] = int(value)
        elif key == "mempool_target":
            params["mempool_target"] = int(value)
        elif key == "injection_period":
            params["tx_injection_period"] = _parse_period(value)
        elif key == "fee_model":
            params["fee_model"] = (
                value if isinstance(value, FeeModel) else FeeModel.parse(value)
            )
        else:
            raise ValueError(
                f"unknown override {key!r}; supported: {', '.join(_OVERRIDE_KEYS)}"
            )
    return SimConfig(**params)


def _parse_period(value) -> float | tuple[float, float]:
    if isinstance(value, tuple):
        return value
    if isinstance(value, str) and "," in value:
        lo, hi = value.split(",", 1)
        return (float(lo), float(hi))
    return float(value)


def _ring_relays(used_nodes: set[int]) -> list[MinerSpec]:
    return [
        MinerSpec(f"relay-{node}", 0.0, StrategyDescriptor(RTS), node)
        for node in range(RING_NODES)
        if node not in used_nodes
    ]


def _duel_miners(alpha: float) -> list[MinerSpec]:
    miners = [
        MinerSpec("greedy-0", alpha, StrategyDescriptor(GREEDY), DUEL_GREEDY_NODE),
        MinerSpec("honest-0", 1.0 - alpha, StrategyDescriptor(RTS), DUEL_HONEST_NODE),
    ]
    return miners + _ring_relays({DUEL_GREEDY_NODE, DUEL_HONEST_NODE})


def _tenth_miners(k: int) -> list[MinerSpec]:
    # Independent greedy actors are spread evenly around the ring; clustering
    # them on adjacent nodes would artificially shrink the windows in which
    # their near-identical top-fee picks can collide.
    greedy_nodes = {i * RING_NODES // k for i in range(k)} if k else set()
    miners = []
    for node in range(RING_NODES):
        if node in greedy_nodes:
            miners.append(MinerSpec(f"greedy-{node}", 0.1, StrategyDescriptor(GREEDY), node))
        else:
            miners.append(MinerSpec(f"honest-{node}", 0.1, StrategyDescriptor(RTS), node))
    return miners


def _build_job(name: str, point: dict, run_idx: int, run_seed: int, scale: int, overrides: dict):
    if name == "exp1_duel":
        cfg = _config(DUEL_DURATION, run_seed, overrides)
        return cfg, _duel_miners(point["alpha"]), build_ring(RING_NODES, RING_HOP_DELAY)

    if name == "exp2_multi_greedy":
        cfg = _config(DUEL_DURATION, run_seed, overrides)
        return cfg, _tenth_miners(point["k"]), build_ring(RING_NODES, RING_HOP_DELAY)

    if name == "exp3_pool_duel":
        alpha = point["alpha"]
        rest = (1.0 - 2.0 * alpha) / (RING_NODES - 2)
        miners = [
            MinerSpec("greedy-0", alpha, StrategyDescriptor(GREEDY), DUEL_GREEDY_NODE),
            MinerSpec("honest-0", alpha, StrategyDescriptor(RTS), DUEL_HONEST_NODE),
        ]
        miners += [
            MinerSpec(f"rest-{node}", rest, StrategyDescriptor(RTS), node)
            for node in range(RING_NODES)
            if node not in (DUEL_GREEDY_NODE, DUEL_HONEST_NODE)
        ]
        cfg = _config(DUEL_DURATION, run_seed, overrides)
        return cfg, miners, build_ring(RING_NODES, RING_HOP_DELAY)

    if name == "exp4_collision":
        cfg = _config(
            COLLISION_DURATION, run_seed, overrides, block_interval=point["block_interval"]
        )
        return cfg, _tenth_miners(point["k"]), build_ring(RING_NODES, RING_HOP_DELAY)

    if name in ("complex1", "complex2"):
        return _build_complex_job(point, run_idx, run_seed, scale, overrides)

    if name == "topology_study":
        return _build_topology_study_job(point, run_seed, scale, overrides)

    if name == "flat_fee_duel":
        cfg = _config(FLAT_FEE_DURATION, run_seed, overrides, fee_model=_FLAT_FEE)
        return cfg, _duel_miners(point["alpha"]), build_ring(RING_NODES, RING_HOP_DELAY)

    if name == "flat_fee_multi":
        alpha = point["alpha"]
        miners = [MinerSpec("greedy-0", alpha, StrategyDescriptor(GREEDY), 0)]
        miners += [
            MinerSpec(f"honest-{node}", (1.0 - alpha) / 9.0, StrategyDescriptor(RTS), node)
            for node in range(1, RING_NODES)
        ]
        cfg = _config(FLAT_FEE_DURATION, run_seed, overrides, fee_model=_FLAT_FEE)
        return cfg, miners, build_ring(RING_NODES, RING_HOP_DELAY)

    if name == "custom":
        return _build_custom_job(point["spec"], run_seed, overrides)

    raise ValueError(f"unknown experiment {name!r}")


def _placement_stratum(policy: str, run_idx: int, core_size: int, n: int) -> range:
    if policy == "split":  # equal numbers of strongly and weakly connected runs
        policy = "core" if run_idx % 2 == 0 else "edge"
    if policy == "core":
        return range(core_size)
    if policy == "edge":
        return range(core_size, n)
    if policy == "random":
        return range(n)
    raise ValueError(f"unknown placement policy {policy!r}")


def _build_complex_job(point: dict, run_idx: int, run_seed: int, scale: int, overrides: dict):
    n = max(40, COMPLEX_NODES // scale)
    topo_rng = derive_stream(run_seed, "topology")
    topo = build_core_edge(n, rng=topo_rng, hop_delay=point["dtau"])

    # Greedy miners alternate between strongly (core) and weakly (edge)
    # connected placements across runs; the honest rest of the network is a
    # population of miners scattered over the whole graph, so honest blocks
    # also race each other under propagation delay.
    overrides = dict(overrides)
    greedy_policy = overrides.pop("greedy_placement", "split")
    honest_policy = overrides.pop("honest_placement", "random")
    placement_rng = derive_stream(run_seed, "placement")
    stratum = _placement_stratum(greedy_policy, run_idx, topo.core_size, n)
    k = point["k"]
    greedy_nodes: list[int] = []
    while len(greedy_nodes) < k:
        node = placement_rng.choice(stratum)
        if node not in greedy_nodes:
            greedy_nodes.append(node)

    greedy_power = point["alpha"] if point["scenario"] == "single" else 0.1
    miners = [
        MinerSpec(f"greedy-{i}", greedy_power, StrategyDescriptor(GREEDY), node)
        for i, node in enumerate(greedy_nodes)
    ]
    honest_stratum = _placement_stratum(honest_policy, run_idx, topo.core_size, n)
    honest_power = (1.0 - greedy_power * k) / COMPLEX_HONEST_MINERS
    for i in range(COMPLEX_HONEST_MINERS):
        node = placement_rng.choice(honest_stratum)
        while node in greedy_nodes:
            node = placement_rng.choice(honest_stratum)
        miners.append(MinerSpec(f"honest-{i}", honest_power, StrategyDescriptor(RTS), node))
    cfg = _config(
        COMPLEX_DURATION, run_seed, overrides, tx_injection_period=COMPLEX_INJECTION
    )
    return cfg, miners, topo


def _build_topology_study_job(point: dict, run_seed: int, scale: int, overrides: dict):
    n = max(40, TOPOLOGY_STUDY_NODES // scale)
    topo_rng = derive_stream(run_seed, "topology")
    # Per-edge delays are exponential; the 1 ms default floor would distort
    # long paths whose calibrated per-hop mean is sub-millisecond.
    draw = build_delay_model("exponential", 1.0, topo_rng, min_delay=1e-6)
    kind = point["kind"]
    if kind == "line":
        topo = build_line(n, draw)
    elif kind == "fully_connected":
        topo = build_fully_connected(n, draw)
    elif kind == "core_edge":
        topo = build_core_edge(n, rng=topo_rng, hop_delay=draw)
    else:
        raise ValueError(f"unknown topology kind {kind!r}")

    # Rescale so the network-wide propagation delay sits at the target
    # (scaled exponentials stay exponential). The duel miners land on random
    # distinct nodes, so each kind contributes its own miner-to-miner
    # distance distribution under the common network-wide delay budget.
    _, _, diameter = topo.weighted_diameter_endpoints()
    topo = topo.scaled_delays(TOPOLOGY_TARGET_DELAY / diameter)
    placement_rng = derive_stream(run_seed, "placement")
    u = placement_rng.randrange(n)
    v = placement_rng.randrange(n)
    while v == u:
        v = placement_rng.randrange(n)
    alpha = point["alpha"]
    miners = [
        MinerSpec("greedy-0", alpha, StrategyDescriptor(GREEDY), u),
        MinerSpec("honest-0", 1.0 - alpha, StrategyDescriptor(RTS), v),
    ]
    cfg = _config(TOPOLOGY_STUDY_DURATION, run_seed, overrides)
    return cfg, miners, topo


def _build_custom_job(spec: dict, run_seed: int, overrides: dict):
    sim = dict(spec["sim"])
    sim.pop("seed", None)
    sim.pop("runs", None)
    cfg = _config(sim.pop("duration"), run_seed, overrides, **sim)
    miners = [
        MinerSpec(mid, power, parse_strategy(strategy), node)
        for mid, power, strategy, node in spec["miners"]
    ]
    topo = _build_custom_topology(spec["topology"], run_seed)
    return cfg, miners, topo


def _build_custom_topology(topo_spec: dict, run_seed: int) -> Topology:
    kind = topo_spec["kind"]
    if kind == "file":
        return Topology.from_edge_list_file(topo_spec["path"])
    n = int(topo_spec.get("n", RING_NODES))
    hop_delay = float(topo_spec.get("hop_delay", RING_HOP_DELAY))
    if kind == "ring":
        return build_ring(n, hop_delay)
    if kind == "line":
        return build_line(n, hop_delay)
    if kind == "fully_connected":
        return build_fully_connected(n, hop_delay)
    if kind == "core_edge":
        return build_core_edge(
            n,
            core_fraction=float(topo_spec.get("core_fraction", 0.1)),
            core_degree=int(topo_spec.get("core_degree", 30)),
            edge_degree=int(topo_spec.get("edge_degree", 3)),
            rng=derive_stream(run_seed, "topology"),
            hop_delay=hop_delay,
        )
    raise ValueError(f"unknown topology kind {kind!r}")


def _execute(task: tuple) -> dict:
    name, point, run_idx, run_seed, scale, overrides = task
    cfg, miners, topo = _build_job(name, point, run_idx, run_seed, scale, overrides)
    trace = run(cfg, miners, topo)
    ordered = total_order(trace.blocks)
    fees = {tx_id: tx.fee for tx_id, tx in trace.transactions.items()}
    attributed = attribute_rewards(ordered, fees)
    metrics = collision_metrics(attributed)
    profits = profit_factor(attributed, miners)
    total_reward = sum(attributed.reward_of.values())
    per_miner = [
        {
            "miner": m.id,
            "group": m.id.split("-", 1)[0],
            "power": m.power,
            "strategy": m.strategy.describe(),
            "reward_share": attributed.reward_of.get(m.id, 0.0) / total_reward,
            "profit_factor": profits[m.id],
        }
        for m in miners
        if m.power > 0
    ]
    return {
        "miners": per_miner,
        "n_blocks": len(trace.blocks),
        "collision_rate": metrics.collision_rate,
        "throughput_ratio": metrics.throughput_ratio,
        "duplicate_inclusions": metrics.duplicate_inclusions,
        "total_inclusions": metrics.total_inclusions,
    }


def _execute_all(tasks: list[tuple], jobs: int | None) -> list[dict]:
    if jobs is None:
        jobs = min(os.cpu_count() or 1, len(tasks))
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_execute, tasks, chunksize=1))
    return [_execute(task) for task in tasks]


def _assemble(
    result: ExperimentResult,
    points: tuple[dict, ...],
    point_keys: list[str],
    tasks: list[tuple],
    point_indices: list[int],
    measurements: list[dict],
    extra_columns: dict | None = None,
) -> ExperimentResult:
    extra = extra_columns or {}
    per_point: dict[int, list[dict]] = {}
    for task, point_idx, measured in zip(tasks, point_indices, measurements):
        _, point, run_idx, run_seed, _, _ = task
        per_point.setdefault(point_idx, []).append(measured)
        base = {key: point[key] for key in point_keys}
        base.update(extra)
        base["run"] = run_idx
        base["seed"] = run_seed
        for entry in measured["miners"]:
            result.profit_rows.append({**base, **entry})
        result.collision_rows.append(
            {
                **base,
                "n_blocks": measured["n_blocks"],
                "collision_rate": measured["collision_rate"],
                "throughput_ratio": measured["throughput_ratio"],
                "duplicate_inclusions": measured["duplicate_inclusions"],
                "total_inclusions": measured["total_inclusions"],
            }
        )

    for point_idx, point in enumerate(points):
        measured_runs = per_point.get(point_idx, [])
        if not measured_runs:
            continue
        groups: dict[str, dict[str, list[float]]] = {}
        for measured in measured_runs:
            by_group: dict[str, list[dict]] = {}
            for entry in measured["miners"]:
                by_group.setdefault(entry["group"], []).append(entry)
            for group, entries in by_group.items():
                stats = groups.setdefault(group, {"pf": [], "share": []})
                stats["pf"].append(sum(e["profit_factor"] for e in entries) / len(entries))
                stats["share"].append(sum(e["reward_share"] for e in entries))
        rates = [m["collision_rate"] for m in measured_runs]
        for group in sorted(groups):
            stats = groups[group]
            result.summary_rows.append(
                {
                    **{key: point[key] for key in point_keys},
                    **extra,
                    "group": group,
                    "runs": len(stats["pf"]),
                    "mean_profit_factor": statistics.fmean(stats["pf"]),
                    "std_profit_factor": (
                        statistics.stdev(stats["pf"]) if len(stats["pf"]) > 1 else 0.0
                    ),
                    "mean_reward_share": statistics.fmean(stats["share"]),
                    "std_reward_share": (
                        statistics.stdev(stats["share"]) if len(stats["share"]) > 1 else 0.0
                    ),
                    "mean_collision_rate": statistics.fmean(rates),
                    "std_collision_rate": (
                        statistics.stdev(rates) if len(rates) > 1 else 0.0
                    ),
                }
            )
    return result


def run_experiment(
    name: str,
    seed: int = DEFAULT_SEED,
    runs: int | None = None,
    scale: int = 1,
    jobs: int | None = None,
    overrides: dict | None = None,
) -> ExperimentResult:
    """Execute every (point, run) of the named experiment and build result rows."""
    if name not in EXPERIMENTS:
        raise ValueError(
            f"unknown experiment {name!r}; valid: {', '.join(experiment_names())}"
        )
    definition = EXPERIMENTS[name]
    if runs is None:
        runs = definition.default_runs
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    if scale < 1:
        raise ValueError(f"scale must be >= 1, got {scale}")
    overrides = dict(overrides or {})
    allowed = _OVERRIDE_KEYS + (
        _PLACEMENT_KEYS if name in ("complex1", "complex2") else ()
    )
    for key in overrides:
        if key not in allowed:
            raise ValueError(
                f"unknown override {key!r}; supported: {', '.join(allowed)}"
            )

    tasks = []
    point_indices = []
    for point_idx, point in enumerate(definition.points):
        for run_idx in range(runs):
            tasks.append((name, point, run_idx, _run_seed(seed, run_idx), scale, overrides))
            point_indices.append(point_idx)
    measurements = _execute_all(tasks, jobs)

    result = ExperimentResult(name=name, seed=seed, runs=runs, scale=scale)
    point_keys = list(definition.points[0].keys())
    extra = {"scale": scale} if name in _SCALED_EXPERIMENTS else None
    return _assemble(
        result, definition.points, point_keys, tasks, point_indices, measurements, extra
    )


def parse_custom_config(path) -> dict:
    """Read a custom experiment description (INI sections: sim, topology, miners).

    Miner entries read ``<id> = <power> <strategy> <node>``.
    """
    parser = configparser.ConfigParser()
    read = parser.read(path)
    if not read:
        raise ValueError(f"cannot read config file {path!r}")
    if "miners" not in parser or not parser["miners"]:
        raise ValueError("config needs a [miners] section with at least one miner")

    sim_section = parser["sim"] if "sim" in parser else {}
    sim = {
        "block_interval": float(sim_section.get("block_interval", BLOCK_INTERVAL)),
        "block_capacity": int(sim_section.get("block_capacity", BLOCK_CAPACITY)),
        "mempool_target": int(sim_section.get("mempool_target", MEMPOOL_TARGET)),
        "tx_injection_period": _parse_period(
            sim_section.get("injection_period", str(INJECTION_PERIOD))
        ),
        "fee_model": FeeModel.parse(sim_section.get("fee_model", "exponential:1.0")),
        "duration": float(sim_section.get("duration", DUEL_DURATION)),
        "seed": int(sim_section.get("seed", DEFAULT_SEED)),
        "runs": int(sim_section.get("runs", DEFAULT_RUNS)),
    }

    topo_section = parser["topology"] if "topology" in parser else {}
    topology = {key: topo_section[key] for key in topo_section}
    topology.setdefault("kind", "ring")

    miners = []
    for miner_id, text in parser["miners"].items():
        parts = text.split()
        if len(parts) != 3:
            raise ValueError(
                f"miner {miner_id!r}: expected '<power> <strategy> <node>', got {text!r}"
            )
        miners.append((miner_id, float(parts[0]), parts[1], int(parts[2])))

    return {"sim": sim, "topology": topology, "miners": miners}


def run_custom(
    spec: dict,
    seed: int | None = None,
    runs: int | None = None,
    jobs: int | None = None,
    overrides: dict | None = None,
) -> ExperimentResult:
    """Run the single point described by a parsed custom config."""
    if seed is None:
        seed = spec["sim"].get("seed", DEFAULT_SEED)
    if runs is None:
        runs = spec["sim"].get("runs", DEFAULT_RUNS)
    overrides = dict(overrides or {})
    point = {"spec": spec}
    tasks = [
        ("custom", point, run_idx, _run_seed(seed, run_idx), 1, overrides)
        for run_idx in range(runs)
    ]
    measurements = _execute_all(tasks, jobs)
    result = ExperimentResult(name="custom", seed=seed, runs=runs, scale=1)
    return _assemble(result, (point,), [], tasks, [0] * len(tasks), measurements)


def write_csvs(result: ExperimentResult, outdir) -> dict[str, Path]:
    """One CSV per metric: per-run profit rows, per-run collision rows, and
    the per-point mean/std summary. Returns the written paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    paths: dict[str, Path] = {}
    for label, rows in (
        ("profit", result.profit_rows),
        ("collision", result.collision_rows),
        ("summary", result.summary_rows),
    ):
        path = outdir / f"{result.name}_{label}.csv"
        _write_rows(path, rows)
        paths[label] = path
    return paths


def _write_rows(path: Path, rows: list[dict]) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if not rows:
            return
        writer = csv.DictWriter(fh, fieldnames=list(rows[0].keys()), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
