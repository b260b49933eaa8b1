"""Synthetic graphs for benchmarks and tests."""
from __future__ import annotations

import numpy as np


def preferential_attachment_triples(num_edges: int, edges_per_node: int = 4, num_relations: int = 16, seed: int = 0):
    """Barabasi-Albert style triples as ``(head, relation, tail)`` label tuples.

    Each new node links to ``edges_per_node`` existing nodes chosen in
    proportion to degree; each edge points either way with equal probability
    so most nodes are reachable from the early hubs.
    """
    rng = np.random.default_rng(seed)
    m = edges_per_node
    heads, tails = [], []
    ends = list(range(m))  # every node appears once per incident edge
    node = m
    picks = rng.random(num_edges)
    flips = rng.random(num_edges) < 0.5
    rels = rng.integers(0, num_relations, num_edges)
    i = 0
    while i < num_edges:
        for _ in range(m):
            if i >= num_edges:
                break
            target = ends[int(picks[i] * len(ends))]
            if flips[i]:
                heads.append(target)
                tails.append(node)
            else:
                heads.append(node)
                tails.append(target)
            ends.append(target)
            ends.append(node)
            i += 1
        node += 1
    names = [f"rel{r:02d}" for r in range(num_relations)]
    return [(f"n{h}", names[r], f"n{t}") for h, r, t in zip(heads, rels.tolist(), tails)]


def triples_to_tsv(triples) -> bytes:
    return "".join(f"{h}\t{r}\t{t}\n" for h, r, t in triples).encode("utf-8")
