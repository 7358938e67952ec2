"""Reduce distance-constrained labeling to channel assignment on a graph power."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph, WeightedGraph, all_pairs_distance


@dataclass(frozen=True)
class DistanceConstraints:
    """Separation requirements (p1, ..., pk) indexed by hop distance."""

    values: tuple[int, ...]

    def __post_init__(self):
        if not self.values:
            raise ValueError("at least one distance constraint is required")
        if any(not isinstance(p, int) or p < 1 for p in self.values):
            raise ValueError("distance constraints must be positive integers")

    @property
    def k(self) -> int:
        return len(self.values)

    @classmethod
    def parse(cls, text: str) -> "DistanceConstraints":
        try:
            return cls(tuple(int(part) for part in text.split(",")))
        except ValueError as exc:
            raise ValueError(f"cannot parse distance constraints from {text!r}") from exc


def labeling_to_ca(g: Graph, constraints: DistanceConstraints) -> WeightedGraph:
    """Weighted instance on the k-th power: pairs at distance i get weight p_i.

    Pairs farther than k (or in different components) impose no constraint and
    produce no edge.
    """
    dist = all_pairs_distance(g)
    k = constraints.k
    triples = []
    for u in range(g.n):
        for v in range(u + 1, g.n):
            d = dist[u][v]
            if 1 <= d <= k:
                triples.append((u, v, constraints.values[int(d) - 1]))
    return WeightedGraph.from_edges(g.n, triples)


def scale_constraints(constraints: DistanceConstraints, span: int, c: int):
    """Scale constraints and span together; feasibility is preserved both ways."""
    if c < 1:
        raise ValueError("scale factor must be positive")
    return DistanceConstraints(tuple(c * p for p in constraints.values)), c * span
