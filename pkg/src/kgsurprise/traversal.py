"""Multi-source BFS, shortest relation paths and graph diameter.

The BFS is level-synchronous over the CSR arrays but reproduces a FIFO queue
exactly: sources are enqueued in ascending id order, each frontier keeps
discovery order, and the first (frontier node, adjacency slot) to reach an
unvisited entity becomes its parent. The resulting path is the
lexicographically least shortest path under (relation id, tail id) ordering.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import InvalidInputError
from .graph import EntityId, KnowledgeGraph, RelationId

#: Marker stored in :attr:`DistanceMap.dist` for entities no source reaches.
UNREACHED = -1


@dataclass(frozen=True)
class Context:
    """Grounded source entities, kept sorted and unique."""

    entities: tuple[EntityId, ...]

    def __post_init__(self):
        if not self.entities:
            raise InvalidInputError("context must contain at least one entity")
        object.__setattr__(self, "entities", tuple(sorted(set(int(e) for e in self.entities))))

    @classmethod
    def of(cls, graph: KnowledgeGraph, items: Iterable[EntityId | str]) -> "Context":
        return cls(tuple(graph.resolve(x) for x in items))

    def __contains__(self, entity):
        return entity in self.entities

    def __iter__(self):
        return iter(self.entities)

    def __len__(self):
        return len(self.entities)


@dataclass(frozen=True)
class RelationPath:
    nodes: tuple[EntityId, ...]
    relations: tuple[RelationId, ...]

    def __len__(self):
        return len(self.relations)

    def labels(self, graph: KnowledgeGraph) -> list[str]:
        """Alternating node/relation labels, starting and ending with a node."""
        out = [graph.entity_label(self.nodes[0])]
        for r, v in zip(self.relations, self.nodes[1:]):
            out.append(graph.relation_label(r))
            out.append(graph.entity_label(v))
        return out

    def render(self, graph: KnowledgeGraph) -> str:
        parts = [graph.entity_label(self.nodes[0])]
        for r, v in zip(self.relations, self.nodes[1:]):
            parts.append(f"-{graph.relation_label(r)}-> {graph.entity_label(v)}")
        return " ".join(parts)


class DistanceMap:
    """Hop counts from a context plus one parent link per reached entity."""

    __slots__ = ("context", "dist", "parent_node", "parent_rel")

    def __init__(self, context: Context, dist, parent_node, parent_rel):
        self.context = context
        self.dist = dist
        self.parent_node = parent_node
        self.parent_rel = parent_rel
        for arr in (dist, parent_node, parent_rel):
            arr.flags.writeable = False

    def __len__(self):
        return int(self.dist.size)

    def _check(self, entity):
        if not 0 <= entity < self.dist.size:
            raise InvalidInputError(f"entity id {entity} out of range [0, {self.dist.size})")
        return int(entity)

    def distance(self, entity: EntityId) -> int | None:
        """Hop count, or ``None`` when unreached."""
        d = int(self.dist[self._check(entity)])
        return None if d == UNREACHED else d

    def reached(self, entity: EntityId) -> bool:
        return self.dist[self._check(entity)] != UNREACHED

    def parent(self, entity: EntityId) -> tuple[EntityId, RelationId] | None:
        e = self._check(entity)
        u = int(self.parent_node[e])
        return None if u < 0 else (u, int(self.parent_rel[e]))

    def as_dict(self) -> dict[int, int | None]:
        return {i: (None if d == UNREACHED else d) for i, d in enumerate(self.dist.tolist())}

    def __eq__(self, other):
        if not isinstance(other, DistanceMap):
            return NotImplemented
        return (
            self.context == other.context
            and np.array_equal(self.dist, other.dist)
            and np.array_equal(self.parent_node, other.parent_node)
            and np.array_equal(self.parent_rel, other.parent_rel)
        )

    __hash__ = None


def _gather(offsets: np.ndarray, frontier: np.ndarray):
    """Edge indices for all out-edges of ``frontier`` in queue order, plus owner positions."""
    starts = offsets[frontier]
    counts = offsets[frontier + 1] - starts
    total = int(counts.sum())
    if total == 0:
        return None, None
    owner = np.repeat(np.arange(frontier.size), counts)
    first_slot = np.cumsum(counts) - counts
    edge_idx = np.arange(total) - first_slot[owner] + starts[owner]
    return edge_idx, owner


def multi_source_bfs(graph: KnowledgeGraph, context: Context | Sequence[EntityId]) -> DistanceMap:
    if not isinstance(context, Context):
        context = Context(tuple(context))
    n = graph.num_entities
    for c in context.entities:
        if not 0 <= c < n:
            raise InvalidInputError(f"context entity id {c} out of range [0, {n})")

    dist = np.full(n, UNREACHED, dtype=np.int32)
    parent_node = np.full(n, -1, dtype=np.int32)
    parent_rel = np.full(n, -1, dtype=np.int32)
    frontier = np.asarray(context.entities, dtype=np.int64)
    dist[frontier] = 0
    offsets, rels, tails = graph.offsets, graph.rels, graph.tails
    level = 0
    while frontier.size:
        edge_idx, owner = _gather(offsets, frontier)
        if edge_idx is None:
            break
        targets = tails[edge_idx]
        fresh = dist[targets] == UNREACHED
        if not fresh.any():
            break
        targets, edge_idx, owner = targets[fresh], edge_idx[fresh], owner[fresh]
        _, first = np.unique(targets, return_index=True)
        first.sort()
        new = targets[first]
        level += 1
        dist[new] = level
        parent_node[new] = frontier[owner[first]]
        parent_rel[new] = rels[edge_idx[first]]
        frontier = new.astype(np.int64)
    return DistanceMap(context, dist, parent_node, parent_rel)


def geometric_surprise(distmap: DistanceMap, entity: EntityId, alpha: float) -> float:
    """Hop distance from the context, or ``alpha`` when no directed path exists."""
    if not alpha > 0:
        raise InvalidInputError(f"alpha must be positive, got {alpha!r}")
    d = distmap.distance(entity)
    return alpha if d is None else d


def shortest_relation_path(graph: KnowledgeGraph, distmap: DistanceMap, entity: EntityId) -> RelationPath | None:
    if len(distmap) != graph.num_entities:
        raise InvalidInputError("distance map does not belong to this graph")
    d = distmap.distance(entity)
    if d is None:
        return None
    nodes = [int(entity)]
    relations = []
    v = int(entity)
    for _ in range(d):
        v, r = int(distmap.parent_node[v]), int(distmap.parent_rel[v])
        nodes.append(v)
        relations.append(r)
    nodes.reverse()
    relations.reverse()
    return RelationPath(tuple(nodes), tuple(relations))


def eccentricity(graph: KnowledgeGraph, entity: EntityId) -> int:
    """Largest finite hop count reachable from ``entity``."""
    return int(multi_source_bfs(graph, Context((entity,))).dist.max(initial=0))


def diameter(graph: KnowledgeGraph) -> int:
    """Longest finite shortest-path distance over ordered pairs (BFS from every entity).

    Cost is O(|E| * (|E| + |T|)); pass ``alpha`` explicitly on large graphs.
    """
    best = 0
    offsets = graph.offsets
    has_out = np.flatnonzero(np.diff(offsets))
    for source in has_out.tolist():
        best = max(best, eccentricity(graph, source))
    return best


def suggested_alpha(graph: KnowledgeGraph) -> int:
    """Smallest integer penalty exceeding every finite distance."""
    return diameter(graph) + 1
