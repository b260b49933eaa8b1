"""Compression-based complexity of relation paths.

A path ``[r1, ..., rk]`` is encoded as ``"r1|...|rk"`` and compressed with
LZ77 after a corpus of the graph's own relation labels, so relations that are
frequent in the graph are cheap to describe. The estimate is

    k = clamp((cost(corpus | path) - cost(corpus)) / len(path), 0, 1)

with cost counting 1 per literal token and 3 per match token.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InvalidInputError
from .graph import KnowledgeGraph
from .lz77 import DEFAULT_MIN_MATCH, DEFAULT_WINDOW, MatchToken, iter_tokens, token_cost
from .traversal import RelationPath

DELIMITER = "|"
CORPUS_LIMIT = 32768
#: Complexity assigned to a target with no path from the context.
DISCONNECTED_COMPLEXITY = 1.0


@dataclass(frozen=True)
class ComplexityEstimate:
    k: float
    conditional_cost: int
    raw_length: int


def encode_path(path: RelationPath, graph: KnowledgeGraph) -> str:
    labels = [graph.relation_label(r) for r in path.relations]
    for label in labels:
        if DELIMITER in label:
            raise InvalidInputError(f"relation label {label!r} contains the reserved delimiter {DELIMITER!r}")
    return DELIMITER.join(labels)


def build_relation_corpus(graph: KnowledgeGraph, limit: int = CORPUS_LIMIT) -> bytes:
    """Relation labels of every stored triple in storage order, ``|``-joined, last ``limit`` bytes."""
    if graph.num_edges == 0:
        return b""
    encoded = [label.encode("utf-8") for label in graph.relation_labels]
    # walk backwards only as far as the cap requires
    picked = []
    size = -1
    rels = graph.rels
    i = rels.size
    chunk = 4096
    while i > 0 and size < limit:
        lo = max(0, i - chunk)
        for r in reversed(rels[lo:i].tolist()):
            picked.append(encoded[r])
            size += len(encoded[r]) + 1
            if size >= limit:
                break
        i = lo
    picked.reverse()
    corpus = b"|".join(picked)
    return corpus[-limit:] if len(corpus) > limit else corpus


class CorpusCompressor:
    """Compresses a corpus once and prices paths appended after it.

    Greedy tokens of ``corpus + "|" + path`` agree with those of ``corpus``
    up to the first token whose search touched the end of the corpus (its
    best match ran to the end, or too few bytes remained to form a match).
    Only the tail from that point is re-tokenized per query.
    """

    def __init__(self, corpus: bytes, window: int = DEFAULT_WINDOW, min_match: int = DEFAULT_MIN_MATCH):
        self.corpus = bytes(corpus)
        self.window = window
        self.min_match = min_match
        n = len(self.corpus)
        self.resume = n
        tail_cost = 0
        for pos, tok in iter_tokens(self.corpus, 0, window, min_match):
            if self.resume == n:
                if n - pos < min_match or (isinstance(tok, MatchToken) and pos + tok.length == n):
                    self.resume = pos
            if pos >= self.resume:
                tail_cost += token_cost(tok)
        self.tail_cost = tail_cost
        self._cache: dict[bytes, ComplexityEstimate] = {}

    def conditional_cost(self, path: bytes) -> int:
        if not path:
            return 0
        if not self.corpus:
            data, start = path, 0
        else:
            data, start = self.corpus + DELIMITER.encode() + path, self.resume
        cost = sum(token_cost(t) for _, t in iter_tokens(data, start, self.window, self.min_match))
        return cost - (self.tail_cost if self.corpus else 0)

    def estimate(self, path: str | bytes) -> ComplexityEstimate:
        raw = path.encode("utf-8") if isinstance(path, str) else bytes(path)
        hit = self._cache.get(raw)
        if hit is not None:
            return hit
        if not raw:
            est = ComplexityEstimate(0.0, 0, 0)
        else:
            cost = self.conditional_cost(raw)
            est = ComplexityEstimate(min(1.0, max(0.0, cost / len(raw))), cost, len(raw))
        self._cache[raw] = est
        return est


@lru_cache(maxsize=8)
def _compressor(corpus: bytes, window: int, min_match: int) -> CorpusCompressor:
    return CorpusCompressor(corpus, window, min_match)


def kolmogorov_estimate(
    path: str | bytes,
    corpus: bytes = b"",
    window: int = DEFAULT_WINDOW,
    min_match: int = DEFAULT_MIN_MATCH,
) -> ComplexityEstimate:
    return _compressor(bytes(corpus), window, min_match).estimate(path)
