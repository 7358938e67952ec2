"""Channel assignment solving on uniform decompositions.

Pipeline: make the weighted type graph reflexive, build the shift digraph
with window length z = wmax, pick an edge multiset by integer feasibility
(Kirchhoff balance + per-type occurrence counts + total walk length, with
connectivity enforced through lazily generated cuts), extract an Euler walk,
and decode the walk into vertex labels.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass

from .decomposition import (
    NdPartition,
    TypeGraph,
    check_uniform,
    min_vertex_cover,
    nd_partition,
    refine_uniform,
    vc_partition,
)
from .errors import GuardExceeded, InternalSolverError
from .graph import (
    Labeling,
    WeightedGraph,
    connected_components,
    trivial_upper_bound,
)
from .ilp import (
    EQ,
    LE,
    Constraint,
    IlpModel,
    add_constraint,
    refute_by_certificate,
    relaxation_point,
    solve_feasibility,
)
from .reduction import labeling_to_ca
from .shift_digraph import ShiftDigraph, build_shift_digraph, iter_bits

ITER_CAP_ENV = "NDCHAN_ITER_CAP"


@dataclass
class SolveStats:
    """Counters filled in by the solving entry points."""

    nd: int | None = None
    types: int | None = None
    digraph_nodes: int = 0
    cuts_added: int = 0
    solve_ms: int = 0


@dataclass(frozen=True)
class ReflexiveReduction:
    """Reflexive type graph plus the vertex bookkeeping needed to undo it.

    Loopless classes are shrunk to a single kept vertex with a placeholder
    weight-1 loop; the dropped vertices later copy the keeper's label.
    """

    type_graph: TypeGraph
    kept: tuple[tuple[int, ...], ...]
    dropped: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class EdgeMultiset:
    """Chosen multiplicities per digraph edge; zero entries are omitted."""

    counts: dict

    def __post_init__(self):
        if any(c < 1 for c in self.counts.values()):
            raise ValueError("multiplicities must be positive")
        object.__setattr__(self, "counts", dict(self.counts))

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True)
class Walk:
    """Closed walk in the shift digraph as a node index sequence."""

    nodes: tuple[int, ...]


def preprocess_reflexive(tg: TypeGraph, partition: NdPartition) -> ReflexiveReduction:
    """Give every type a loop, shrinking loopless classes to one kept vertex."""
    if tg.weights is None:
        raise ValueError("weighted type graph required")
    if tg.node_count != partition.count:
        raise ValueError("type graph and partition disagree on class count")
    sizes = []
    kept = []
    dropped = []
    weights = {pair: w for pair, w in tg.weights.items() if pair[0] != pair[1]}
    for t in range(tg.node_count):
        members = sorted(partition.classes[t])
        if len(members) != tg.sizes[t]:
            raise ValueError(f"class {t} size mismatch")
        if t in tg.loops:
            sizes.append(tg.sizes[t])
            kept.append(tuple(members))
            dropped.append(())
            weights[(t, t)] = tg.weights[(t, t)]
        else:
            sizes.append(1)
            kept.append((members[0],))
            dropped.append(tuple(members[1:]))
            weights[(t, t)] = 1  # a singleton never repeats, so any weight works
    reduced = TypeGraph(
        sizes=tuple(sizes),
        loops=frozenset(range(tg.node_count)),
        adjacency=tg.adjacency,
        weights=weights,
    )
    return ReflexiveReduction(reduced, tuple(kept), tuple(dropped))


def build_flow_model(d: ShiftDigraph, tg: TypeGraph, span: int):
    """ILP whose solutions are edge multisets of closed walks of the right shape.

    Variables: one multiplicity per digraph edge, bounded by the walk length
    span + z + 1.  Constraints: flow conservation at every node, per-type
    occurrence counts (edges leaving windows whose first slice contains the
    type must be taken exactly size(type) times), and the total length.
    Connectivity is not encoded here; it is enforced lazily by cuts.

    Returns the model and the edge list that variable indices refer to.
    """
    if span < 0:
        raise ValueError("span must be nonnegative")
    length = span + d.window_length + 1
    var_count = len(d.edges)
    constraints = []
    for node in range(len(d.windows)):
        terms = [(ei, 1) for ei in d.out_edges[node] if d.edges[ei][1] != node]
        terms += [(ei, -1) for ei in d.in_edges[node] if d.edges[ei][0] != node]
        if terms:
            constraints.append(Constraint.build(terms, EQ, 0))
    for t in range(tg.node_count):
        terms = [
            (ei, 1)
            for ei, (src, _) in enumerate(d.edges)
            if d.windows[src][0] >> t & 1
        ]
        constraints.append(Constraint.build(terms, EQ, tg.sizes[t]))
    constraints.append(Constraint.build([(ei, 1) for ei in range(var_count)], EQ, length))
    model = IlpModel(var_count, (length,) * var_count, tuple(constraints))
    return model, d.edges


def _component_cut(d: ShiftDigraph, offender: int, component, big_m: int) -> Constraint:
    """Demand the offending edge only be used when the component boundary is."""
    cut_terms = [(offender, 1)]
    for ei, (a, b) in enumerate(d.edges):
        if (a in component) != (b in component):
            cut_terms.append((ei, -big_m))
    return Constraint.build(cut_terms, LE, 0)


def _component_cut_pair(d: ShiftDigraph, offender: int, component, big_m: int):
    """One-sided variants: a used component must be both entered and left.

    Each is valid on its own and the pair dominates the two-sided boundary
    form, halving what a fractional solution can hide behind."""
    into = [(offender, 1)]
    out_of = [(offender, 1)]
    for ei, (a, b) in enumerate(d.edges):
        inside_a = a in component
        inside_b = b in component
        if inside_b and not inside_a:
            into.append((ei, -big_m))
        elif inside_a and not inside_b:
            out_of.append((ei, -big_m))
    return [Constraint.build(into, LE, 0), Constraint.build(out_of, LE, 0)]


def connectivity_violation(values, d: ShiftDigraph, big_m: int, capacity=None):
    """Cut separating a used component from the all-empty window, if any.

    Returns None when the support is weakly connected and touches the empty
    window.  Otherwise picks the first support edge inside an offending
    component K and demands it only be used when some digraph edge crossing
    the K boundary is used too.  When window visit capacities are supplied,
    the cut coefficient shrinks to the offender's provable maximum, which
    propagates much better than the generic walk length.
    """
    support = [ei for ei, v in enumerate(values) if v > 0]
    if not support:
        return None

    parent: dict[int, int] = {}

    def find(x):
        r = x
        while parent[r] != r:
            r = parent[r]
        while parent[x] != r:
            parent[x], x = r, parent[x]
        return r

    for ei in support:
        a, b = d.edges[ei]
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    empty_root = find(d.empty_index) if d.empty_index in parent else None
    offender = None
    for ei in support:
        if empty_root is None or find(d.edges[ei][0]) != empty_root:
            offender = ei
            break
    if offender is None:
        return None

    bad_root = find(d.edges[offender][0])
    component = {node for node in parent if find(node) == bad_root}
    if capacity is not None:
        src_cap = capacity[d.edges[offender][0]]
        if src_cap >= 0:
            big_m = min(big_m, max(1, src_cap))
    return _component_cut(d, offender, component, big_m)


def _all_violated_cuts(values, d: ShiftDigraph, big_m: int, capacity=None, per_edge=True):
    """Cuts for every component missing the empty window, for every support
    edge of the component when per_edge is set.

    connectivity_violation reports one violated cut; the solve loop converges
    much faster when each round removes every offending component outright.
    """
    first = connectivity_violation(values, d, big_m, capacity)
    if first is None:
        return []

    parent: dict[int, int] = {}

    def find(x):
        r = x
        while parent[r] != r:
            r = parent[r]
        while parent[x] != r:
            parent[x], x = r, parent[x]
        return r

    support = [ei for ei, v in enumerate(values) if v > 0]
    for ei in support:
        a, b = d.edges[ei]
        parent.setdefault(a, a)
        parent.setdefault(b, b)
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    empty_root = find(d.empty_index) if d.empty_index in parent else None

    components: dict[int, set[int]] = {}
    for node in parent:
        root = find(node)
        if empty_root is None or root != empty_root:
            components.setdefault(root, set()).add(node)

    cuts = []
    for root in sorted(components):
        component = components[root]
        for ei in support:
            src = d.edges[ei][0]
            if src in component:
                m = big_m
                if capacity is not None and capacity[src] >= 0:
                    m = min(m, max(1, capacity[src]))
                cuts.extend(_component_cut_pair(d, ei, component, m))
                if not per_edge:
                    break
    return cuts


def _iteration_cap(d: ShiftDigraph, override: int | None) -> int:
    if override is not None:
        return override
    env = os.environ.get(ITER_CAP_ENV)
    if env is not None:
        return int(env)
    return 10 * max(1, len(d.edges))


def _window_capacity(window, sizes) -> int | None:
    """How often a walk may visit this window.

    k visits at indices I with a type in coordinate set J cover the label
    positions I + J, and |I + J| >= |I| + |J| - 1 on integers, so a type
    held in c coordinates allows at most size(t) - c + 1 visits (consecutive
    visits share positions, which is why this is not size // c).  None means
    the window can never be visited at all.
    """
    counts: dict[int, int] = {}
    for mask in window:
        for t in iter_bits(mask):
            counts[t] = counts.get(t, 0) + 1
    if any(c > sizes[t] for t, c in counts.items()):
        return None
    if not counts:
        return -1  # untyped windows are unlimited
    return min(sizes[t] - c + 1 for t, c in counts.items())


def _walk_index_ranges(d: ShiftDigraph, span: int):
    """Feasible walk-index interval per node and per edge.

    A walk node at index i covers padded label positions i .. i+z-1, and
    types only occur at positions z+1 .. z+span+1, so every typed coordinate
    pins the index into an interval.  Index 1 and the final index belong to
    the all-empty window alone, and a node needs predecessors and successors
    whose intervals line up; iterating that to a fixpoint tightens the
    intervals along the graph.  Returns (node_ranges, edge_ranges) with
    empty ranges marked as (1, 0).
    """
    z = d.window_length
    length = span + z + 1
    last = length + 1
    lo = [1] * len(d.windows)
    hi = [last] * len(d.windows)
    for node, window in enumerate(d.windows):
        if node != d.empty_index:
            lo[node] = 2
            hi[node] = last - 1
        for jj in range(z):
            if window[jj]:
                lo[node] = max(lo[node], z + 1 - jj)
                hi[node] = min(hi[node], z + span + 1 - jj)

    changed = True
    while changed:
        changed = False
        for node in range(len(d.windows)):
            if node == d.empty_index or lo[node] > hi[node]:
                continue
            best_in = min(
                (lo[d.edges[ei][0]] for ei in d.in_edges[node]), default=last + 1
            )
            best_out = max(
                (hi[d.edges[ei][1]] for ei in d.out_edges[node]), default=0
            )
            if best_in + 1 > lo[node]:
                lo[node] = best_in + 1
                changed = True
            if best_out - 1 < hi[node]:
                hi[node] = best_out - 1
                changed = True

    edge_ranges = []
    for a, b in d.edges:
        elo = max(lo[a], lo[b] - 1, 1)
        ehi = min(hi[a], hi[b] - 1, length)
        edge_ranges.append((elo, ehi))
    return list(zip(lo, hi)), edge_ranges


def _pruned_digraph(d: ShiftDigraph, tg: TypeGraph, span: int):
    """Restriction of the digraph to windows a valid walk could visit.

    Drops windows whose content exceeds the class sizes and edges whose
    feasible walk-index range is empty for this span.  Valid supports only
    use the restriction, and cuts computed on it stay valid, so solving on
    it is equivalent; edge indices are mapped back afterwards.
    """
    capacity = [_window_capacity(w, tg.sizes) for w in d.windows]
    _, edge_ranges = _walk_index_ranges(d, span)
    keep_edge = [
        elo <= ehi and capacity[a] is not None and capacity[b] is not None
        for (a, b), (elo, ehi) in zip(d.edges, edge_ranges)
    ]
    keep_node = [False] * len(d.windows)
    keep_node[d.empty_index] = True
    for ei, ok in enumerate(keep_edge):
        if ok:
            keep_node[d.edges[ei][0]] = True
            keep_node[d.edges[ei][1]] = True
    if all(keep_node) and all(keep_edge):
        return d, capacity, list(range(len(d.edges)))
    nodes = [i for i, k in enumerate(keep_node) if k]
    node_map = {old: new for new, old in enumerate(nodes)}
    edges = []
    edge_map = []
    for ei, ok in enumerate(keep_edge):
        if ok:
            a, b = d.edges[ei]
            edges.append((node_map[a], node_map[b]))
            edge_map.append(ei)
    pruned = ShiftDigraph(
        d.type_count, d.window_length, tuple(d.windows[i] for i in nodes), tuple(edges)
    )
    return pruned, [capacity[i] for i in nodes], edge_map


def _strengthen_model(
    model: IlpModel, d: ShiftDigraph, tg: TypeGraph, capacity, span: int
) -> IlpModel:
    """Add walk-implied constraints that sharpen propagation without changing
    the acceptable multisets.

    Every closed padded walk sees each type in coordinate role j exactly
    size(t) times for every j, not only j = 1, and visits each window at
    most its capacity; both facts follow from in-window coordinates mapping
    to distinct label positions.  On top of that, every edge use occupies
    one walk index within its feasible range, so edges confined to late
    (or early) indices cannot outnumber the remaining slots.
    """
    z = d.window_length
    sizes = tg.sizes
    extra = []

    for j in range(1, z):
        for t in range(tg.node_count):
            terms = [
                (ei, 1)
                for ei, (src, _) in enumerate(d.edges)
                if d.windows[src][j] >> t & 1
            ]
            extra.append(Constraint.build(terms, EQ, sizes[t]))

    # the two padding runs contribute z departures with an empty slice in
    # every coordinate role, which no all-full cyclic pattern can provide
    for j in range(z):
        terms = [
            (ei, -1)
            for ei, (src, _) in enumerate(d.edges)
            if d.windows[src][j] == 0
        ]
        extra.append(Constraint.build(terms, LE, -z))

    for node, cap in enumerate(capacity):
        if cap < 0:
            continue
        terms = [(ei, 1) for ei in d.out_edges[node]]
        if terms:
            extra.append(Constraint.build(terms, LE, cap))

    # the walk starts at the empty window, so the window must be visited
    extra.append(
        Constraint.build([(ei, -1) for ei in d.out_edges[d.empty_index]], LE, -1)
    )

    for c in extra:
        model = add_constraint(model, c)
    return model


def _frontier_selector(d: ShiftDigraph):
    """Branching rule that lays the walk down from the all-empty window.

    Nodes whose committed in-flow exceeds their committed out-flow must be
    left again, so their undecided out-edges come first.  Committed flow
    stranded away from the start is approached along the shortest usable
    path, and otherwise the walk grows from nodes already reachable through
    committed flow.  Searching in this order keeps the tree close to the
    walk-prefix space instead of wandering through unordered flow patterns.
    """
    from collections import deque

    edges = d.edges
    out_edges = d.out_edges
    node_count = len(d.windows)

    def choose(lo, hi):
        out_c = [0] * node_count
        in_c = [0] * node_count
        for ei, (a, b) in enumerate(edges):
            v = lo[ei]
            if v:
                out_c[a] += v
                in_c[b] += v
        for node in range(node_count):
            if in_c[node] > out_c[node]:
                for ei in out_edges[node]:
                    if hi[ei] > lo[ei]:
                        return ei
        # reachability through committed flow, the start included
        reach = [False] * node_count
        reach[d.empty_index] = True
        frontier = [d.empty_index]
        while frontier:
            node = frontier.pop()
            for ei in out_edges[node]:
                if lo[ei] and not reach[edges[ei][1]]:
                    reach[edges[ei][1]] = True
                    frontier.append(edges[ei][1])
        stranded = {
            node
            for node in range(node_count)
            if not reach[node] and (out_c[node] or in_c[node])
        }
        if stranded:
            # head toward the nearest stranded support along usable edges
            parent = {}
            queue = deque(node for node in range(node_count) if reach[node])
            seen = set(queue)
            while queue:
                node = queue.popleft()
                for ei in out_edges[node]:
                    dst = edges[ei][1]
                    if hi[ei] == 0 or dst in seen:
                        continue
                    seen.add(dst)
                    parent[dst] = ei
                    if dst in stranded:
                        current = dst
                        while not reach[edges[parent[current]][0]]:
                            current = edges[parent[current]][0]
                        first = parent[current]
                        if hi[first] > lo[first]:
                            return first
                    queue.append(dst)
        for node in range(node_count):
            if reach[node]:
                for ei in out_edges[node]:
                    if hi[ei] > lo[ei]:
                        return ei
        return None

    return choose


def solve_flow(
    d: ShiftDigraph,
    tg: TypeGraph,
    span: int,
    *,
    iteration_cap: int | None = None,
    stats: SolveStats | None = None,
):
    """Solve the flow model, adding connectivity cuts until the support is
    one component through the all-empty window.  None means no multiset exists.

    Valid supports never touch windows whose content exceeds the class
    sizes, so the model is built on that restriction and solved with
    largest-value-first branching; edge indices map back to d at the end.
    """
    pruned, capacity, edge_map = _pruned_digraph(d, tg, span)
    model, _ = build_flow_model(pruned, tg, span)
    model = _strengthen_model(model, pruned, tg, capacity, span)
    selector = _frontier_selector(pruned)
    big_m = span + d.window_length + 1
    cap = _iteration_cap(d, iteration_cap)
    rounds = 0

    # cheap root rounds first: separate cuts from relaxation vertices while
    # they keep showing disconnected support (best effort, tightly capped)
    for _ in range(min(cap, 25)):
        point = relaxation_point(model)
        if point is None:
            break
        support = [1 if v > 1e-4 else 0 for v in point]
        cuts = _all_violated_cuts(support, pruned, big_m, capacity, per_edge=False)
        if not cuts:
            break
        for cut in cuts:
            model = add_constraint(model, cut)
        if stats is not None:
            stats.cuts_added += len(cuts)

    previous = None
    while True:
        # a budgeted pass settles easy rounds; refutation-heavy rounds go to
        # the certificate check and then the walk-frontier search
        try:
            solution = solve_feasibility(
                model, descending=True, phase=previous, max_nodes=3000
            )
        except GuardExceeded:
            if refute_by_certificate(model):
                return None
            solution = solve_feasibility(
                model, descending=True, selector=selector, wide_ascending=3
            )
        if solution is None:
            return None
        cuts = _all_violated_cuts(solution.values, pruned, big_m, capacity)
        if not cuts:
            return EdgeMultiset(
                {edge_map[ei]: v for ei, v in enumerate(solution.values) if v > 0}
            )
        previous = solution.values
        for cut in cuts:
            model = add_constraint(model, cut)
        rounds += 1
        if stats is not None:
            stats.cuts_added += len(cuts)
        if rounds > cap:
            raise InternalSolverError(
                f"connectivity cuts exceeded the iteration cap of {cap}"
            )


def euler_walk(ms: EdgeMultiset, d: ShiftDigraph) -> Walk:
    """Closed walk from the all-empty window traversing each edge exactly
    its multiplicity (Hierholzer); the multiset must be balanced and connected."""
    if not ms.counts:
        return Walk((d.empty_index,))

    balance: dict[int, int] = {}
    touched: set[int] = set()
    for ei, mult in ms.counts.items():
        a, b = d.edges[ei]
        balance[a] = balance.get(a, 0) + mult
        balance[b] = balance.get(b, 0) - mult
        touched.add(a)
        touched.add(b)
    if any(v != 0 for v in balance.values()):
        raise InternalSolverError("edge multiset violates flow conservation")
    if d.empty_index not in touched:
        raise InternalSolverError("edge multiset misses the all-empty window")

    succ: dict[int, list[list[int]]] = {}
    for ei in sorted(ms.counts):
        a, b = d.edges[ei]
        succ.setdefault(a, []).append([b, ms.counts[ei]])
    cursor = {node: 0 for node in succ}

    stack = [d.empty_index]
    circuit = []
    while stack:
        v = stack[-1]
        options = succ.get(v, ())
        i = cursor.get(v, 0)
        while i < len(options) and options[i][1] == 0:
            i += 1
        if v in cursor:
            cursor[v] = i
        if i < len(options):
            options[i][1] -= 1
            stack.append(options[i][0])
        else:
            circuit.append(stack.pop())
    circuit.reverse()

    if len(circuit) != ms.total + 1 or circuit[0] != d.empty_index or circuit[-1] != d.empty_index:
        raise InternalSolverError("multiset support is not an Eulerian circuit at the all-empty window")
    return Walk(tuple(circuit))


def walk_to_labeling(
    walk: Walk,
    d: ShiftDigraph,
    reduction: ReflexiveReduction,
    span: int,
    vertex_count: int,
) -> Labeling:
    """Decode a closed walk into labels.

    The walk node at index z + i carries label position i in its first slice;
    each type present there consumes its next kept vertex in ascending id
    order, and dropped vertices copy their keeper's label afterwards.
    """
    z = d.window_length
    nodes = walk.nodes
    if len(nodes) != span + z + 2:
        raise InternalSolverError(
            f"walk has {len(nodes)} nodes, expected {span + z + 2}"
        )
    if nodes[0] != d.empty_index or nodes[-1] != d.empty_index:
        raise InternalSolverError("walk does not start and end at the all-empty window")

    tg = reduction.type_graph
    counts = [0] * tg.node_count
    for node in nodes[:-1]:
        for t in iter_bits(d.windows[node][0]):
            counts[t] += 1
    if counts != list(tg.sizes):
        raise InternalSolverError("per-type occurrence counts do not match class sizes")

    labels: list[int | None] = [None] * vertex_count
    used = [0] * tg.node_count
    for i in range(span + 1):
        mask = d.windows[nodes[z + i]][0]
        for t in iter_bits(mask):
            labels[reduction.kept[t][used[t]]] = i
            used[t] += 1
    for t in range(tg.node_count):
        keeper_label = labels[reduction.kept[t][0]]
        for v in reduction.dropped[t]:
            labels[v] = keeper_label
    if any(lab is None for lab in labels):
        raise InternalSolverError("decode left unlabeled vertices")
    return Labeling(tuple(labels), span)


class _ComponentPipeline:
    """Prebuilt digraph and reduction for one connected component, reusable
    across span probes."""

    def __init__(self, wg, partition, tg, *, max_digraph_nodes=None):
        self.vertex_count = wg.graph.n
        self.reduction = preprocess_reflexive(tg, partition)
        self.z = self.reduction.type_graph.wmax
        self.digraph = build_shift_digraph(
            self.reduction.type_graph, self.z, max_nodes=max_digraph_nodes
        )

    def solve(self, span: int, stats: SolveStats | None = None):
        ms = solve_flow(self.digraph, self.reduction.type_graph, span, stats=stats)
        if ms is None:
            return None
        walk = euler_walk(ms, self.digraph)
        return walk_to_labeling(
            walk, self.digraph, self.reduction, span, self.vertex_count
        )


def _component_instances(wg: WeightedGraph, partition: NdPartition):
    """Split an instance into connected components with restricted partitions.

    Only classes of isolated vertices can span components, so intersecting
    every class with the component keeps the decomposition axioms and the
    weight uniformity.
    """
    out = []
    for comp in connected_components(wg.graph):
        comp_set = set(comp)
        to_local = {v: i for i, v in enumerate(comp)}
        triples = [
            (to_local[u], to_local[v], w)
            for (u, v), w in wg.weights.items()
            if u in comp_set
        ]
        sub_wg = WeightedGraph.from_edges(len(comp), triples)
        classes = []
        kinds = []
        for cls, kind in zip(partition.classes, partition.kinds):
            inside = cls & comp_set
            if inside:
                classes.append(frozenset(to_local[v] for v in inside))
                kinds.append(kind)
        order = sorted(range(len(classes)), key=lambda i: min(classes[i]))
        sub_partition = NdPartition(
            tuple(classes[i] for i in order), tuple(kinds[i] for i in order)
        )
        out.append((sub_wg, sub_partition, comp))
    return out


def _build_pipelines(wg, partition, *, max_digraph_nodes=None):
    pipelines = []
    for sub_wg, sub_partition, comp in _component_instances(wg, partition):
        ok, sub_tg = check_uniform(sub_wg, sub_partition)
        if not ok:
            raise InternalSolverError("component restriction lost weight uniformity")
        pipelines.append(
            (
                _ComponentPipeline(
                    sub_wg, sub_partition, sub_tg, max_digraph_nodes=max_digraph_nodes
                ),
                comp,
            )
        )
    return pipelines


def _solve_on_pipelines(pipelines, vertex_count, span, stats):
    labels: list[int | None] = [None] * vertex_count
    for pipeline, comp in pipelines:
        sub = pipeline.solve(span, stats)
        if sub is None:
            return None
        for local, vertex in enumerate(comp):
            labels[vertex] = sub.labels[local]
    return Labeling(tuple(labels), span)


def solve_ca_uniform(
    wg: WeightedGraph,
    partition: NdPartition,
    span: int,
    *,
    stats: SolveStats | None = None,
    max_digraph_nodes: int | None = None,
):
    """Decide channel assignment at the given span on a uniform instance.

    Connected components are solved independently and merged.  Raises
    ValueError when the weights are not uniform with respect to the partition.
    """
    if span < 0:
        raise ValueError("span must be nonnegative")
    ok, _ = check_uniform(wg, partition)
    if not ok:
        raise ValueError("edge weights are not uniform on the given partition")
    if stats is not None:
        stats.nd = partition.count
        stats.types = partition.count
    start = time.perf_counter()
    pipelines = _build_pipelines(wg, partition, max_digraph_nodes=max_digraph_nodes)
    if stats is not None:
        stats.digraph_nodes += sum(len(p.digraph.windows) for p, _ in pipelines)
    result = _solve_on_pipelines(pipelines, wg.graph.n, span, stats)
    if stats is not None:
        stats.solve_ms += int((time.perf_counter() - start) * 1000)
    return result


def solve_ca_vc(
    wg: WeightedGraph,
    span: int,
    *,
    stats: SolveStats | None = None,
    max_digraph_nodes: int | None = None,
):
    """Decide channel assignment via the vertex-cover decomposition with
    weight refinement; works on arbitrary weighted instances."""
    cover = min_vertex_cover(wg.graph)
    base = vc_partition(wg.graph, cover)
    refined = refine_uniform(wg, base)
    result = solve_ca_uniform(
        wg, refined, span, stats=stats, max_digraph_nodes=max_digraph_nodes
    )
    if stats is not None:
        stats.nd = base.count
        stats.types = refined.count
    return result


def minimize_span(
    wg: WeightedGraph,
    route: str = "uniform",
    partition: NdPartition | None = None,
    *,
    stats: SolveStats | None = None,
    max_digraph_nodes: int | None = None,
):
    """Least feasible span with a witnessing labeling.

    Feasibility is monotone in the span, so this binary-searches
    [0, (n-1) * wmax]; the upper end is always feasible.
    """
    if route == "uniform":
        if partition is None:
            raise ValueError("uniform route requires a partition")
        base = refined = partition
    elif route == "vc":
        cover = min_vertex_cover(wg.graph)
        base = vc_partition(wg.graph, cover)
        refined = refine_uniform(wg, base)
    else:
        raise ValueError(f"unknown route {route!r}")
    ok, _ = check_uniform(wg, refined)
    if not ok:
        raise ValueError("edge weights are not uniform on the given partition")
    if stats is not None:
        stats.nd = base.count
        stats.types = refined.count
    start = time.perf_counter()
    pipelines = _build_pipelines(wg, refined, max_digraph_nodes=max_digraph_nodes)
    if stats is not None:
        stats.digraph_nodes += sum(len(p.digraph.windows) for p, _ in pipelines)

    # any edge forces two labels wmax apart, so spans below wmax need no probe
    lower = wg.wmax if wg.weights else 0
    best = _solve_on_pipelines(pipelines, wg.graph.n, lower, stats)
    if best is not None:
        if stats is not None:
            stats.solve_ms += int((time.perf_counter() - start) * 1000)
        return lower, best

    high = trivial_upper_bound(wg)
    best = _solve_on_pipelines(pipelines, wg.graph.n, high, stats)
    if best is None:
        raise InternalSolverError("trivial upper bound probe came back infeasible")
    # walk down from the feasible side: infeasible probes are far more
    # expensive than feasible ones, and only the last span needs refuting
    while high > lower + 1:
        candidate = _solve_on_pipelines(pipelines, wg.graph.n, high - 1, stats)
        if candidate is None:
            break
        best = candidate
        high -= 1
    if stats is not None:
        stats.solve_ms += int((time.perf_counter() - start) * 1000)
    return high, best


def solve_labeling(
    g,
    constraints,
    span: int,
    *,
    stats: SolveStats | None = None,
    max_digraph_nodes: int | None = None,
):
    """Decide distance-constrained labeling through the channel assignment
    reduction.

    The twin partition of the original graph is used: it remains a valid
    decomposition of the power graph and the reduced weights are uniform on
    it, because weights depend only on class-level distances.
    """
    wg = labeling_to_ca(g, constraints)
    partition = nd_partition(g)
    return solve_ca_uniform(
        wg, partition, span, stats=stats, max_digraph_nodes=max_digraph_nodes
    )
