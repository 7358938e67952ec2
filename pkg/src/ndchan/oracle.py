"""Deliberately naive brute-force solvers used to validate the real ones.

Nothing here shares constraint-checking code with the solver modules; the
point is an independent second opinion at small scale.
"""

from __future__ import annotations

from .errors import GuardExceeded
from .graph import Graph, Labeling, WeightedGraph

DEFAULT_GUARD = 100_000_000


def _search_order(g: Graph) -> list[int]:
    """Degeneracy order (reverse min-degree removal), densest core first."""
    degree = [g.degree(v) for v in range(g.n)]
    removed = [False] * g.n
    removal = []
    for _ in range(g.n):
        v = min(
            (u for u in range(g.n) if not removed[u]),
            key=lambda u: (degree[u], u),
        )
        removed[v] = True
        removal.append(v)
        for u in g.adjacency[v]:
            if not removed[u]:
                degree[u] -= 1
    removal.reverse()
    return removal


def brute_force_ca(wg: WeightedGraph, span: int, *, guard: int = DEFAULT_GUARD):
    """Backtracking search over all labelings, pruning on incident edges.

    Raises GuardExceeded when the label space (span+1)^n is over the guard;
    that refusal is distinct from infeasibility.
    """
    if span < 0:
        raise ValueError("span must be nonnegative")
    n = wg.graph.n
    if (span + 1) ** n > guard:
        raise GuardExceeded(f"label space (span+1)^n exceeds guard of {guard}")

    order = _search_order(wg.graph)
    incident: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for (u, v), w in wg.weights.items():
        incident[u].append((v, w))
        incident[v].append((u, w))
    labels = [-1] * n

    def backtrack(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for value in range(span + 1):
            if all(
                labels[u] < 0 or abs(value - labels[u]) >= w for u, w in incident[v]
            ):
                labels[v] = value
                if backtrack(i + 1):
                    return True
                labels[v] = -1
        return False

    if not backtrack(0):
        return None
    return Labeling(tuple(labels), span)


def brute_force_nd(g: Graph, *, max_vertices: int = 10) -> int:
    """Minimum class count over all set partitions satisfying the
    decomposition axioms (every class a clique or independent set, edges
    between classes all-or-none)."""
    if g.n > max_vertices:
        raise GuardExceeded(f"{g.n} vertices exceed the guard of {max_vertices}")
    if g.n == 0:
        return 0

    adjacency = g.adjacency
    best = g.n  # singletons always satisfy the axioms

    def partition_valid(blocks) -> bool:
        for block in blocks:
            flags = {
                v in adjacency[u] for i, u in enumerate(block) for v in block[i + 1 :]
            }
            if len(flags) > 1:
                return False
        for i, one in enumerate(blocks):
            for other in blocks[i + 1 :]:
                flags = {v in adjacency[u] for u in one for v in other}
                if len(flags) > 1:
                    return False
        return True

    blocks: list[list[int]] = []

    def assign(v: int):
        nonlocal best
        if len(blocks) >= best:
            return
        if v == g.n:
            if partition_valid(blocks):
                best = len(blocks)
            return
        for block in blocks:
            block.append(v)
            assign(v + 1)
            block.pop()
        blocks.append([v])
        assign(v + 1)
        blocks.pop()

    assign(0)
    return best
