"""Network topologies and block-propagation delays.

Gossip is idealized as shortest-path flooding: every node learns a block
exactly once, at its shortest cumulative edge delay from the miner. That
matches the usual per-hop arithmetic (ring of 10 at 1 s/hop -> 5 s worst
case) while keeping the event count per block linear in the number of
mining nodes.
"""

from __future__ import annotations

import heapq
import threading
from collections import deque
from typing import Callable, Iterable

__all__ = [
    "Topology",
    "TopologyError",
    "build_ring",
    "build_line",
    "build_fully_connected",
    "build_core_edge",
    "build_delay_model",
    "propagation_delays",
]

RING = "ring"
LINE = "line"
FULLY_CONNECTED = "fully_connected"
CORE_EDGE = "core_edge"
CUSTOM = "custom"

# Share of an edge node's extra links that aim directly at the core; the rest
# attach to any already-placed node, which is what stretches the periphery.
_CORE_ATTACH_BIAS = 0.5


class TopologyError(ValueError):
    """The requested topology or delay model is malformed."""


def _resolve(delay: float | Callable[[], float]) -> float:
    value = delay() if callable(delay) else delay
    if value <= 0:
        raise TopologyError(f"edge delay must be > 0, got {value}")
    return float(value)


class Topology:
    """An undirected weighted graph; edge weights are propagation delays in seconds.

    Instances are immutable after construction. Shortest-path delay maps are
    computed per source on demand and cached; the cache is guarded so
    concurrent readers see a consistent map.
    """

    def __init__(
        self,
        nodes: Iterable[int],
        edges: Iterable[tuple[int, int, float]],
        kind_tag: str = CUSTOM,
    ) -> None:
        self.nodes: frozenset[int] = frozenset(nodes)
        self.kind_tag = kind_tag
        if not self.nodes:
            raise TopologyError("topology needs at least one node")
        adjacency: dict[int, list[tuple[int, float]]] = {u: [] for u in self.nodes}
        seen: set[frozenset[int]] = set()
        edge_list: list[tuple[int, int, float]] = []
        for u, v, delay in edges:
            if u == v:
                raise TopologyError(f"self-loop on node {u}")
            if u not in self.nodes or v not in self.nodes:
                raise TopologyError(f"edge ({u}, {v}) references unknown node")
            key = frozenset((u, v))
            if key in seen:
                raise TopologyError(f"parallel edge between {u} and {v}")
            seen.add(key)
            if delay <= 0:
                raise TopologyError(f"edge ({u}, {v}) has non-positive delay {delay}")
            delay = float(delay)
            adjacency[u].append((v, delay))
            adjacency[v].append((u, delay))
            edge_list.append((u, v, delay) if u < v else (v, u, delay))
        self.edges: tuple[tuple[int, int, float], ...] = tuple(sorted(edge_list))
        self._adjacency = adjacency
        self._delay_cache: dict[int, dict[int, float]] = {}
        self._cache_lock = threading.Lock()
        if not self._is_connected():
            raise TopologyError("topology is not connected")

    def __len__(self) -> int:
        return len(self.nodes)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def neighbors(self, node: int) -> list[tuple[int, float]]:
        return list(self._adjacency[node])

    def _is_connected(self) -> bool:
        start = next(iter(self.nodes))
        seen = {start}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v, _ in self._adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
        return len(seen) == len(self.nodes)

    def delays_from(self, source: int) -> dict[int, float]:
        """Minimum cumulative delay from ``source`` to every node (Dijkstra)."""
        if source not in self.nodes:
            raise TopologyError(f"unknown source node {source}")
        with self._cache_lock:
            cached = self._delay_cache.get(source)
        if cached is not None:
            return cached
        dist = {source: 0.0}
        heap = [(0.0, source)]
        adjacency = self._adjacency
        while heap:
            d, u = heapq.heappop(heap)
            if d > dist.get(u, float("inf")):
                continue
            for v, w in adjacency[u]:
                nd = d + w
                if nd < dist.get(v, float("inf")):
                    dist[v] = nd
                    heapq.heappush(heap, (nd, v))
        with self._cache_lock:
            self._delay_cache[source] = dist
        return dist

    def weighted_diameter_endpoints(self) -> tuple[int, int, float]:
        """Approximate weighted diameter via a double sweep: (far_u, far_v, delay)."""
        start = min(self.nodes)
        first = self.delays_from(start)
        u = max(first, key=lambda n: (first[n], n))
        second = self.delays_from(u)
        v = max(second, key=lambda n: (second[n], n))
        return u, v, second[v]

    def scaled_delays(self, factor: float) -> "Topology":
        """A copy with every edge delay multiplied by ``factor``."""
        if factor <= 0:
            raise TopologyError(f"scale factor must be > 0, got {factor}")
        return Topology(
            self.nodes,
            [(u, v, d * factor) for u, v, d in self.edges],
            self.kind_tag,
        )

    def to_edge_list_file(self, path) -> None:
        """Write one ``u v delay_seconds`` line per edge."""
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for u, v, d in self.edges:
                fh.write(f"{u} {v} {d!r}\n")

    @classmethod
    def from_edge_list_file(cls, path) -> "Topology":
        nodes: set[int] = set()
        edges: list[tuple[int, int, float]] = []
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split()
                if len(parts) != 3:
                    raise TopologyError(f"malformed edge line {line!r}")
                u, v, d = int(parts[0]), int(parts[1]), float(parts[2])
                nodes.update((u, v))
                edges.append((u, v, d))
        return cls(nodes, edges, CUSTOM)


def propagation_delays(topo: Topology, source: int) -> dict[int, float]:
    """Shortest-path delay from ``source`` to every node; 0 for the source itself."""
    return topo.delays_from(source)


def build_ring(n: int, hop_delay: float | Callable[[], float]) -> Topology:
    """Cycle of ``n`` nodes; diameter is floor(n/2) hops."""
    if n < 3:
        raise TopologyError(f"a ring needs at least 3 nodes, got {n}")
    edges = [(i, (i + 1) % n, _resolve(hop_delay)) for i in range(n)]
    return Topology(range(n), edges, RING)


def build_line(n: int, hop_delay: float | Callable[[], float]) -> Topology:
    """Path graph of ``n`` nodes; the worst case for block propagation."""
    if n < 2:
        raise TopologyError(f"a line needs at least 2 nodes, got {n}")
    edges = [(i, i + 1, _resolve(hop_delay)) for i in range(n - 1)]
    return Topology(range(n), edges, LINE)


def build_fully_connected(n: int, hop_delay: float | Callable[[], float]) -> Topology:
    """Complete graph; every delivery needs a single hop."""
    if n < 2:
        raise TopologyError(f"a complete graph needs at least 2 nodes, got {n}")
    edges = [(i, j, _resolve(hop_delay)) for i in range(n) for j in range(i + 1, n)]
    return Topology(range(n), edges, FULLY_CONNECTED)


def build_core_edge(
    n: int,
    core_fraction: float = 0.1,
    core_degree: int = 30,
    edge_degree: int = 3,
    rng=None,
    hop_delay: float | Callable[[], float] = 1.0,
) -> Topology:
    """A strongly connected core with a weakly connected periphery.

    Nodes ``0 .. n_core-1`` form a random regular-ish subgraph of target
    degree ``core_degree``. Each remaining node attaches ``edge_degree``
    links: the first to any already-placed node (which grows peripheral
    chains), the rest biased toward the core. Any leftover components are
    rewired into the core so the result is always connected. The returned
    topology carries ``core_size`` for placement decisions.

    The defaults give a mean degree a little above 8 at n=7592.
    """
    if rng is None:
        raise TopologyError("build_core_edge needs a seeded rng")
    if n < 3:
        raise TopologyError(f"core/edge graph needs at least 3 nodes, got {n}")
    if not (0.0 < core_fraction <= 1.0):
        raise TopologyError(f"core_fraction must be in (0, 1], got {core_fraction}")
    if core_degree < 1 or edge_degree < 1:
        raise TopologyError("core_degree and edge_degree must be >= 1")

    n_core = max(2, round(core_fraction * n))
    n_core = min(n_core, n)
    target = min(core_degree, n_core - 1)

    adjacency: dict[int, set[int]] = {u: set() for u in range(n)}

    def link(u: int, v: int) -> bool:
        if u == v or v in adjacency[u]:
            return False
        adjacency[u].add(v)
        adjacency[v].add(u)
        return True

    # Core: configuration-model pairing of stubs, then top up nodes that lost
    # stubs to rejected self/parallel pairs.
    stubs = [u for u in range(n_core) for _ in range(target)]
    rng.shuffle(stubs)
    for i in range(0, len(stubs) - 1, 2):
        link(stubs[i], stubs[i + 1])
    for u in range(n_core):
        core_deg = sum(1 for w in adjacency[u] if w < n_core)
        attempts = 0
        while core_deg < target and attempts < 4 * n_core:
            if link(u, rng.randrange(n_core)):
                core_deg += 1
            attempts += 1

    # Periphery: sequential attachment.
    for v in range(n_core, n):
        placed = v  # nodes 0..v-1 already exist
        link(v, rng.randrange(placed))
        for _ in range(edge_degree - 1):
            for _attempt in range(20):
                if rng.random() < _CORE_ATTACH_BIAS:
                    candidate = rng.randrange(n_core)
                else:
                    candidate = rng.randrange(placed)
                if link(v, candidate):
                    break

    # Stitch stray components into the core.
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        component = [start]
        seen[start] = True
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    component.append(w)
                    queue.append(w)
        if start != 0:
            link(rng.choice(component), rng.randrange(n_core))

    edges = [
        (u, v, _resolve(hop_delay))
        for u in range(n)
        for v in adjacency[u]
        if u < v
    ]
    topo = Topology(range(n), edges, CORE_EDGE)
    topo.core_size = n_core
    return topo


def build_delay_model(
    kind: str,
    param: float,
    rng=None,
    min_delay: float = 0.001,
) -> Callable[[], float]:
    """A per-edge delay assigner.

    ``constant``: every edge gets ``param`` seconds. ``exponential``: i.i.d.
    draws with mean ``param``, resampled while at or below ``min_delay`` to
    keep delays positive and the event queue sane. Pass a smaller
    ``min_delay`` when calibrating very long paths whose per-hop mean falls
    under the default millisecond floor.
    """
    if param <= 0:
        raise TopologyError(f"delay model parameter must be > 0, got {param}")
    if min_delay <= 0:
        raise TopologyError(f"min_delay must be > 0, got {min_delay}")
    if kind == "constant":
        return lambda: param
    if kind == "exponential":
        if rng is None:
            raise TopologyError("exponential delay model needs a seeded rng")
        rate = 1.0 / param

        def draw() -> float:
            while True:
                value = rng.expovariate(rate)
                if value > min_delay:
                    return value

        return draw
    raise TopologyError(f"unknown delay model kind {kind!r}")
