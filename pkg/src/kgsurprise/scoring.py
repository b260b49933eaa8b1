"""Free-energy scoring and ranking of candidate groundings."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .complexity import DISCONNECTED_COMPLEXITY, CorpusCompressor, build_relation_corpus, encode_path
from .errors import InvalidInputError
from .graph import EntityId, KnowledgeGraph
from .traversal import (
    Context,
    DistanceMap,
    RelationPath,
    multi_source_bfs,
    shortest_relation_path,
    suggested_alpha,
)

PRAGMATIC = "pragmatic"
EPISTEMIC = "epistemic"
MODES = (PRAGMATIC, EPISTEMIC)


@dataclass(frozen=True)
class ScoringParams:
    alpha: float
    lam: float = 1.0
    mode: str = PRAGMATIC

    def __post_init__(self):
        if not self.alpha > 0:
            raise InvalidInputError(f"alpha must be positive, got {self.alpha!r}")
        if not self.lam >= 0:
            raise InvalidInputError(f"lambda must be non-negative, got {self.lam!r}")
        if self.mode not in MODES:
            raise InvalidInputError(f"mode must be one of {MODES}, got {self.mode!r}")

    @classmethod
    def for_graph(cls, graph: KnowledgeGraph, lam: float = 1.0, mode: str = PRAGMATIC) -> "ScoringParams":
        """Defaults: alpha one above the graph diameter."""
        return cls(alpha=suggested_alpha(graph), lam=lam, mode=mode)


@dataclass(frozen=True)
class ScoreCard:
    entity: EntityId
    distance: int | None
    s_geo: float
    k: float
    f: float
    path: RelationPath | None

    @property
    def reached(self) -> bool:
        return self.distance is not None


def free_energy(s_geo: float, k: float, lam: float) -> float:
    if not lam >= 0:
        raise InvalidInputError(f"lambda must be non-negative, got {lam!r}")
    if not 0.0 <= k <= 1.0:
        raise InvalidInputError(f"complexity must lie in [0, 1], got {k!r}")
    return s_geo + lam * k


class Scorer:
    """Shares one BFS and one compressed corpus across many candidates."""

    def __init__(self, graph: KnowledgeGraph, context: Context | Iterable, params: ScoringParams, corpus: bytes | None = None):
        if not isinstance(context, Context):
            context = Context.of(graph, context)
        self.graph = graph
        self.context = context
        self.params = params
        self.distmap: DistanceMap = multi_source_bfs(graph, context)
        self._compressor = CorpusCompressor(build_relation_corpus(graph) if corpus is None else corpus)

    def score(self, entity: EntityId | str) -> ScoreCard:
        e = self.graph.resolve(entity)
        path = shortest_relation_path(self.graph, self.distmap, e)
        alpha, lam = self.params.alpha, self.params.lam
        if path is None:
            k = DISCONNECTED_COMPLEXITY
            return ScoreCard(e, None, alpha, k, free_energy(alpha, k, lam), None)
        k = self._compressor.estimate(encode_path(path, self.graph)).k
        d = len(path)
        return ScoreCard(e, d, d, k, free_energy(d, k, lam), path)

    def score_many(self, candidates: Sequence[EntityId | str]) -> list[ScoreCard]:
        if not candidates:
            raise InvalidInputError("no candidates given")
        # resolve everything first so an unknown label fails before any work
        ids = list(dict.fromkeys(self.graph.resolve(c) for c in candidates))
        return [self.score(e) for e in ids]

    def rank(self, candidates: Sequence[EntityId | str], mode: str | None = None) -> list[ScoreCard]:
        cards = self.score_many(candidates)
        mode = self.params.mode if mode is None else mode
        if mode == EPISTEMIC:
            return sorted(cards, key=_epistemic_key)
        return sorted(cards, key=_pragmatic_key)


def _pragmatic_key(card: ScoreCard):
    return (card.f, card.entity)


def _epistemic_key(card: ScoreCard):
    # farther first; nothing to observe along a missing path, so unreached last
    if card.distance is None:
        return (1, 0, card.entity)
    return (0, -card.s_geo, card.entity)


def score_entity(graph: KnowledgeGraph, context, entity: EntityId | str, params: ScoringParams) -> ScoreCard:
    return Scorer(graph, context, params).score(entity)


def rank_candidates(graph: KnowledgeGraph, context, candidates, params: ScoringParams) -> list[ScoreCard]:
    """Order candidates by ``params.mode`` (ascending free energy when pragmatic)."""
    return Scorer(graph, context, params).rank(candidates)


def epistemic_rank(graph: KnowledgeGraph, context, candidates, params: ScoringParams) -> list[ScoreCard]:
    return Scorer(graph, context, params).rank(candidates, mode=EPISTEMIC)
