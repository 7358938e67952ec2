import itertools
import random

import pytest

from ndchan import build_shift_digraph, dump_digraph
from ndchan.decomposition import TypeGraph
from ndchan.errors import GuardExceeded
from ndchan.shift_digraph import iter_bits


def single_loop_type(weight, size=1):
    return TypeGraph((size,), frozenset({0}), frozenset(), {(0, 0): weight})


def two_adjacent_types(w, loops=(1, 1)):
    return TypeGraph(
        (1, 1),
        frozenset({0, 1}),
        frozenset({(0, 1)}),
        {(0, 0): loops[0], (1, 1): loops[1], (0, 1): w},
    )


def brute_force_digraph(tg, z):
    """Direct enumeration of all candidate tuples against the definitions."""
    tau = tg.node_count
    pairs = dict(tg.weights)

    def tuple_ok(sets):
        for (t, r), w in pairs.items():
            for i, si in enumerate(sets):
                for j, sj in enumerate(sets):
                    if t == r and i == j:
                        continue
                    hit = (t in si and r in sj) or (r in si and t in sj)
                    if hit and abs(i - j) < w:
                        return False
        return True

    subsets = [frozenset(s) for k in range(tau + 1) for s in itertools.combinations(range(tau), k)]
    nodes = [w for w in itertools.product(subsets, repeat=z) if tuple_ok(w)]
    edges = set()
    for a in nodes:
        for b in nodes:
            if a[1:] == b[:-1] and tuple_ok(a + (b[-1],)):
                edges.add((a, b))
    return set(nodes), edges


def as_sets(d, node):
    return tuple(frozenset(iter_bits(mask)) for mask in d.windows[node])


class TestBuildShiftDigraph:
    def test_single_type_loop_two(self):
        d = build_shift_digraph(single_loop_type(2), 2)
        windows = {as_sets(d, i) for i in range(len(d.windows))}
        empty = frozenset()
        t = frozenset({0})
        assert windows == {(empty, empty), (empty, t), (t, empty)}

    def test_adjacent_types_never_share_a_slot(self):
        d = build_shift_digraph(two_adjacent_types(1), 1)
        windows = {as_sets(d, i)[0] for i in range(len(d.windows))}
        assert windows == {frozenset(), frozenset({0}), frozenset({1})}

    def test_shift_edges_of_loop_example(self):
        d = build_shift_digraph(single_loop_type(2), 2)
        index = {as_sets(d, i): i for i in range(len(d.windows))}
        empty = frozenset()
        t = frozenset({0})
        edge_set = set(d.edges)
        assert (index[(empty, t)], index[(t, empty)]) in edge_set
        assert (index[(empty, t)], index[(empty, empty)]) not in edge_set

    def test_empty_window_first_with_self_loop(self):
        d = build_shift_digraph(two_adjacent_types(2), 2)
        assert d.windows[d.empty_index] == (0, 0)
        assert (0, 0) in d.edges

    def test_empty_type_graph_single_node(self):
        tg = TypeGraph((), frozenset(), frozenset(), {})
        d = build_shift_digraph(tg, 2)
        assert len(d.windows) == 1
        assert d.edges == ((0, 0),)

    def test_rejects_zero_length(self):
        with pytest.raises(ValueError):
            build_shift_digraph(single_loop_type(1), 0)

    def test_rejects_missing_weights(self):
        tg = TypeGraph((1,), frozenset({0}), frozenset())
        with pytest.raises(ValueError, match="weighted"):
            build_shift_digraph(tg, 1)

    def test_rejects_loopless_type(self):
        tg = TypeGraph((2, 1), frozenset({1}), frozenset(), {(1, 1): 1})
        with pytest.raises(ValueError, match="loop"):
            build_shift_digraph(tg, 1)

    def test_node_guard(self):
        tg = two_adjacent_types(1)
        with pytest.raises(GuardExceeded):
            build_shift_digraph(tg, 3, max_nodes=2)

    def test_matches_exhaustive_enumeration(self):
        rng = random.Random(5)
        for tau in (1, 2):
            for z in (1, 2, 3):
                for _ in range(6):
                    loops = {(t, t): rng.randint(1, 3) for t in range(tau)}
                    adjacency = set()
                    weights = dict(loops)
                    if tau == 2 and rng.random() < 0.7:
                        adjacency.add((0, 1))
                        weights[(0, 1)] = rng.randint(1, 3)
                    tg = TypeGraph(
                        (1,) * tau, frozenset(range(tau)), frozenset(adjacency), weights
                    )
                    d = build_shift_digraph(tg, z)
                    nodes, edges = brute_force_digraph(tg, z)
                    got_nodes = {as_sets(d, i) for i in range(len(d.windows))}
                    got_edges = {(as_sets(d, a), as_sets(d, b)) for a, b in d.edges}
                    assert got_nodes == nodes
                    assert got_edges == edges


class TestDump:
    def test_edge_list_format(self):
        d = build_shift_digraph(single_loop_type(2), 2)
        text = dump_digraph(d)
        lines = text.splitlines()
        assert lines[0].startswith("# shift digraph")
        assert "0x0 -> 0x0" in lines[1]
        assert len(lines) == len(d.edges) + 1
