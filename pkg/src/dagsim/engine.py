"""Discrete-event simulation loop.

One network-wide Poisson block process is thinned by miner power, so a single
``block_interval`` knob controls the whole network. Three event kinds exist:

* ``mine``    pick a miner, fill a block from its mempool, schedule arrivals,
* ``arrival`` a block reaches a node; local mempools drop its transactions,
* ``inject``  a shared batch of fresh transactions tops every mempool up to
              the configured target.

Transaction gossip delay is deliberately not modeled: injections are
synchronous and identical across nodes, which isolates the effect of *block*
propagation delay on mempool staleness. Each miner owns a private RNG stream
so reruns with the same seed are bit-identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from heapq import heappop, heappush
from typing import NamedTuple

from .domain import (
    Block,
    MinerSpec,
    NonPositiveInterval,
    SimConfig,
    Transaction,
    validate_config,
)
from .mempool import Mempool
from .network import Topology, propagation_delays
from .strategy import select

__all__ = [
    "Event",
    "MinerState",
    "SimulationTrace",
    "sample_inter_block_time",
    "pick_miner",
    "run",
    "write_trace",
    "read_trace",
]

EVENT_MINE = "mine"
EVENT_ARRIVAL = "arrival"
EVENT_INJECT = "inject"


class Event(NamedTuple):
    """Heap entry; ties in time are broken by the insertion sequence number."""

    time: float
    sequence: int
    kind: str
    data: object = None


@dataclass(slots=True)
class MinerState:
    """Per-miner mutable state: mempool, block knowledge, private RNG stream."""

    spec: MinerSpec
    mempool: Mempool
    known_blocks: set[int] = field(default_factory=set)
    rng: random.Random = field(default_factory=random.Random)


@dataclass(slots=True)
class SimulationTrace:
    """Everything a run produced: blocks, injected transactions, final mempool sizes."""

    blocks: list[Block]
    transactions: dict[int, Transaction]
    final_mempool_sizes: dict[str, int]


def derive_stream(seed: int, label: str) -> random.Random:
    """A named child RNG stream; string seeding hashes through SHA-512, so the
    result is stable across platforms and interpreter sessions."""
    return random.Random(f"{seed}/{label}")


def sample_inter_block_time(block_interval: float, rng: random.Random) -> float:
    """One draw from the exponential inter-block distribution (mean ``block_interval``)."""
    if block_interval <= 0:
        raise NonPositiveInterval(f"block_interval must be > 0, got {block_interval}")
    rate = 1.0 / block_interval
    while True:
        value = rng.expovariate(rate)
        if value > 0.0:  # expovariate can return exactly 0.0 with probability 2**-53
            return value


def pick_miner(miners: list[MinerSpec], rng: random.Random) -> str:
    """Select a miner id with probability equal to its power share.

    Zero-power entries (relays) are never selected.
    """
    u = rng.random()
    acc = 0.0
    last = None
    for m in miners:
        if m.power <= 0.0:
            continue
        acc += m.power
        last = m.id
        if u < acc:
            return m.id
    if last is None:
        raise ValueError("no miner has positive power")
    return last  # float rounding pushed the total a hair under 1


def run(cfg: SimConfig, miners: list[MinerSpec], topo: Topology) -> SimulationTrace:
    """Execute one simulation run until ``cfg.duration``.

    Mining: the picked miner selects up to ``block_capacity`` transactions
    from its own mempool; the block is delivered immediately to every miner
    hosted on the same node (so a miner never duplicates its own blocks) and
    scheduled for arrival elsewhere after the shortest-path delay.

    Injection: a single fresh batch, identical for all nodes, tops each
    mempool up to ``mempool_target``; nodes with a smaller deficit take a
    prefix of the batch. Mempools start full at time 0.
    """
    validate_config(cfg, miners, topo)

    times_rng = derive_stream(cfg.seed, "times")
    pick_rng = derive_stream(cfg.seed, "pick")
    inject_rng = derive_stream(cfg.seed, "inject")

    states = [
        MinerState(m, Mempool(), set(), derive_stream(cfg.seed, f"miner/{m.id}"))
        for m in miners
    ]
    by_id = {st.spec.id: st for st in states}

    hosting_nodes = sorted({m.node for m in miners})
    states_at: dict[int, list[MinerState]] = {
        node: [st for st in states if st.spec.node == node] for node in hosting_nodes
    }
    # Arrivals are only scheduled for nodes that host miners; pure relays are
    # part of the delay metric, not of the event stream.
    remote_delays: dict[int, list[tuple[float, int]]] = {}
    for src in hosting_nodes:
        dist = propagation_delays(topo, src)
        remote_delays[src] = [(dist[v], v) for v in hosting_nodes if v != src]

    transactions: dict[int, Transaction] = {}
    blocks: list[Block] = []
    next_tx_id = 0
    next_block_id = 0

    fee_model = cfg.fee_model
    capacity = cfg.block_capacity
    target = cfg.mempool_target
    period = cfg.tx_injection_period

    def injection_gap() -> float:
        if isinstance(period, tuple):
            return inject_rng.uniform(period[0], period[1])
        return period

    def inject(now: float) -> None:
        nonlocal next_tx_id
        deficits = [target - len(st.mempool) for st in states]
        batch_size = max(deficits)
        if batch_size <= 0:
            return
        batch: list[tuple[int, float]] = []
        for _ in range(batch_size):
            fee = fee_model.draw(inject_rng)
            transactions[next_tx_id] = Transaction(next_tx_id, fee, now)
            batch.append((next_tx_id, fee))
            next_tx_id += 1
        # Nodes whose mempool lost fewer transactions (in-flight blocks not
        # yet seen) cannot take the whole batch; admission is by fee priority,
        # mirroring how a space-constrained mempool evicts the cheapest
        # transactions first.
        batch.sort(key=lambda pair: (-pair[1], pair[0]))
        for st, deficit in zip(states, deficits):
            if deficit > 0:
                st.mempool.add_many(batch[:deficit])

    def deliver(st: MinerState, block: Block) -> None:
        if block.id in st.known_blocks:
            return
        st.known_blocks.add(block.id)
        st.mempool.discard_many(block.txs)

    heap: list[Event] = []
    sequence = 0

    def push(time: float, kind: str, data: object = None) -> None:
        nonlocal sequence
        heappush(heap, Event(time, sequence, kind, data))
        sequence += 1

    inject(0.0)  # mempools start full
    push(injection_gap(), EVENT_INJECT)
    push(sample_inter_block_time(cfg.block_interval, times_rng), EVENT_MINE)

    duration = cfg.duration
    while heap:
        event = heappop(heap)
        now = event.time
        if now > duration:
            break
        kind = event.kind
        if kind == EVENT_ARRIVAL:
            block, node = event.data
            for st in states_at[node]:
                deliver(st, block)
        elif kind == EVENT_MINE:
            miner_id = pick_miner(miners, pick_rng)
            st = by_id[miner_id]
            txs = select(st.spec.strategy, st.mempool, capacity, st.rng)
            block = Block(next_block_id, miner_id, tuple(txs), now, capacity)
            next_block_id += 1
            blocks.append(block)
            for local in states_at[st.spec.node]:  # own node sees it immediately
                deliver(local, block)
            for delay, node in remote_delays[st.spec.node]:
                push(now + delay, EVENT_ARRIVAL, (block, node))
            push(now + sample_inter_block_time(cfg.block_interval, times_rng), EVENT_MINE)
        else:
            inject(now)
            push(now + injection_gap(), EVENT_INJECT)

    return SimulationTrace(
        blocks=blocks,
        transactions=transactions,
        final_mempool_sizes={st.spec.id: len(st.mempool) for st in states},
    )


def write_trace(trace: SimulationTrace, path) -> None:
    """Line-oriented trace dump.

    ``T <id> <fee> <created_at>`` per transaction (id order), then
    ``B <id> <miner> <mined_at> <tx_count> <tx ids...>`` per block (mined order).
    """
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for tx_id in sorted(trace.transactions):
            tx = trace.transactions[tx_id]
            fh.write(f"T {tx.id} {tx.fee!r} {tx.created_at!r}\n")
        for block in trace.blocks:
            ids = " ".join(str(t) for t in block.txs)
            fh.write(f"B {block.id} {block.miner} {block.mined_at!r} {len(block.txs)}")
            fh.write(f" {ids}\n" if ids else "\n")


def read_trace(path, block_capacity: int = 0) -> SimulationTrace:
    """Inverse of ``write_trace``; final mempool sizes are not part of the format.

    ``block_capacity`` 0 sizes each block to its own transaction count.
    """
    transactions: dict[int, Transaction] = {}
    blocks: list[Block] = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "T":
                tx = Transaction(int(parts[1]), float(parts[2]), float(parts[3]))
                transactions[tx.id] = tx
            elif parts[0] == "B":
                count = int(parts[4])
                txs = tuple(int(t) for t in parts[5 : 5 + count])
                capacity = block_capacity if block_capacity else max(count, 1)
                blocks.append(Block(int(parts[1]), parts[2], txs, float(parts[3]), capacity))
            else:
                raise ValueError(f"unknown trace record {parts[0]!r}")
    return SimulationTrace(blocks, transactions, {})
