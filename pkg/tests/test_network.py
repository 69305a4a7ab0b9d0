"""Topology builders against independent shortest-path oracles."""

import math
import random

import pytest

from dagsim.engine import derive_stream
from dagsim.network import (
    Topology,
    TopologyError,
    build_core_edge,
    build_delay_model,
    build_fully_connected,
    build_line,
    build_ring,
    propagation_delays,
)


def oracle_shortest_paths(topo: Topology, source: int) -> dict[int, float]:
    """Bellman-Ford style relaxation; independent of the library's Dijkstra."""
    dist = {node: math.inf for node in topo.nodes}
    dist[source] = 0.0
    for _ in range(len(topo.nodes)):
        changed = False
        for u, v, w in topo.edges:
            if dist[u] + w < dist[v]:
                dist[v] = dist[u] + w
                changed = True
            if dist[v] + w < dist[u]:
                dist[u] = dist[v] + w
                changed = True
        if not changed:
            break
    return dist


class TestRing:
    def test_ten_nodes_unit_hop(self):
        topo = build_ring(10, 1.0)
        delays = propagation_delays(topo, 0)
        assert sorted(delays.values()) == [0, 1, 1, 2, 2, 3, 3, 4, 4, 5]
        assert max(delays.values()) == 5.0

    def test_triangle_diameter_one_hop(self):
        topo = build_ring(3, 1.0)
        for source in range(3):
            assert max(propagation_delays(topo, source).values()) == 1.0

    def test_five_second_hops_match_oracle(self):
        topo = build_ring(10, 5.0)
        assert max(propagation_delays(topo, 0).values()) == 25.0
        assert propagation_delays(topo, 0) == oracle_shortest_paths(topo, 0)

    def test_too_small_rejected(self):
        with pytest.raises(TopologyError):
            build_ring(2, 1.0)


class TestLine:
    def test_two_nodes_single_edge(self):
        topo = build_line(2, 1.0)
        assert topo.edge_count == 1

    def test_end_to_end_matches_oracle(self):
        topo = build_line(5, 1.0)
        assert propagation_delays(topo, 0)[4] == 4.0
        assert propagation_delays(topo, 0) == oracle_shortest_paths(topo, 0)

    def test_middle_source(self):
        topo = build_line(3, 1.0)
        assert propagation_delays(topo, 1) == {0: 1.0, 1: 0.0, 2: 1.0}

    def test_too_small_rejected(self):
        with pytest.raises(TopologyError):
            build_line(1, 1.0)

    def test_diameter_endpoints(self):
        topo = build_line(9, 2.0)
        u, v, diameter = topo.weighted_diameter_endpoints()
        assert {u, v} == {0, 8} and diameter == 16.0


class TestFullyConnected:
    def test_edge_count(self):
        assert build_fully_connected(4, 1.0).edge_count == 6

    def test_all_pairwise_constant(self):
        topo = build_fully_connected(3, 2.0)
        for source in range(3):
            delays = propagation_delays(topo, source)
            assert all(d == 2.0 for node, d in delays.items() if node != source)


class TestCoreEdge:
    def test_full_scale_connected_mean_degree(self):
        topo = build_core_edge(7592, rng=derive_stream(1, "topology"), hop_delay=1.0)
        assert len(topo) == 7592
        assert 2 * topo.edge_count / len(topo) >= 8.0
        # connectivity via independent reachability sweep
        seen = {0}
        frontier = [0]
        while frontier:
            nxt = []
            for u in frontier:
                for v, _ in topo.neighbors(u):
                    if v not in seen:
                        seen.add(v)
                        nxt.append(v)
            frontier = nxt
        assert len(seen) == 7592

    def test_degree_targets_within_ten_percent(self):
        topo = build_core_edge(
            7592, core_fraction=0.1, core_degree=30, edge_degree=3,
            rng=derive_stream(2, "topology"), hop_delay=1.0,
        )
        core = topo.core_size
        core_core_degrees = [
            sum(1 for v, _ in topo.neighbors(u) if v < core) for u in range(core)
        ]
        mean_core = sum(core_core_degrees) / core
        assert abs(mean_core - 30) <= 3.0
        periphery_links = [
            sum(1 for v, _ in topo.neighbors(u) if v < u or v < core)
            for u in range(core, len(topo))
        ]
        mean_links = sum(periphery_links) / len(periphery_links)
        assert abs(mean_links - 3) <= 0.3

    def test_core_fraction_one_is_core_only(self):
        topo = build_core_edge(10, core_fraction=1.0, rng=random.Random(3), hop_delay=1.0)
        assert topo.core_size == 10
        # clamped to the complete graph when core_degree >= n - 1
        assert topo.edge_count == 45

    def test_needs_rng(self):
        with pytest.raises(TopologyError):
            build_core_edge(100, rng=None)


class TestDelayModel:
    def test_constant(self):
        draw = build_delay_model("constant", 0.5)
        assert [draw() for _ in range(5)] == [0.5] * 5

    def test_constant_on_ring_gives_five_second_diameter(self):
        topo = build_ring(10, build_delay_model("constant", 1.0))
        assert max(propagation_delays(topo, 0).values()) == 5.0

    def test_exponential_mean_within_two_percent(self):
        draw = build_delay_model("exponential", 1.0, random.Random(123))
        n = 100_000
        mean = sum(draw() for _ in range(n)) / n
        assert abs(mean - 1.0) < 0.02

    def test_exponential_respects_floor(self):
        draw = build_delay_model("exponential", 0.002, random.Random(5), min_delay=0.001)
        assert all(draw() > 0.001 for _ in range(2000))

    @pytest.mark.parametrize("param", [0.0, -1.0])
    def test_non_positive_param_rejected(self, param):
        with pytest.raises(TopologyError):
            build_delay_model("constant", param)

    def test_unknown_kind_rejected(self):
        with pytest.raises(TopologyError):
            build_delay_model("pareto", 1.0, random.Random(0))


class TestTopologyInvariants:
    def test_self_loop_rejected(self):
        with pytest.raises(TopologyError):
            Topology([0, 1], [(0, 0, 1.0), (0, 1, 1.0)])

    def test_parallel_edge_rejected(self):
        with pytest.raises(TopologyError):
            Topology([0, 1], [(0, 1, 1.0), (1, 0, 2.0)])

    def test_non_positive_delay_rejected(self):
        with pytest.raises(TopologyError):
            Topology([0, 1], [(0, 1, 0.0)])

    def test_disconnected_rejected(self):
        with pytest.raises(TopologyError):
            Topology([0, 1, 2, 3], [(0, 1, 1.0), (2, 3, 1.0)])

    def test_unknown_source_rejected(self):
        with pytest.raises(TopologyError):
            propagation_delays(build_ring(5, 1.0), 99)

    def test_symmetry_and_triangle_inequality(self):
        topo = build_core_edge(120, rng=random.Random(11), hop_delay=1.0)
        rng = random.Random(3)
        nodes = sorted(topo.nodes)
        for _ in range(50):
            u, v, w = rng.sample(nodes, 3)
            du, dv = propagation_delays(topo, u), propagation_delays(topo, v)
            assert du[v] == pytest.approx(dv[u])
            assert du[w] <= du[v] + dv[w] + 1e-9

    def test_scaled_delays(self):
        topo = build_ring(6, 2.0).scaled_delays(3.0)
        assert max(propagation_delays(topo, 0).values()) == 18.0
        with pytest.raises(TopologyError):
            topo.scaled_delays(0.0)


class TestEdgeListFile:
    def test_roundtrip(self, tmp_path):
        topo = build_core_edge(60, rng=random.Random(9), hop_delay=0.25)
        path = tmp_path / "edges.txt"
        topo.to_edge_list_file(path)
        loaded = Topology.from_edge_list_file(path)
        assert loaded.nodes == topo.nodes
        assert loaded.edges == topo.edges

    def test_malformed_line_rejected(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("0 1\n")
        with pytest.raises(TopologyError):
            Topology.from_edge_list_file(path)
