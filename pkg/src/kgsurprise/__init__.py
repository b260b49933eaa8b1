"""Score knowledge-graph entity groundings by free energy.

Free energy of a target is its hop distance from the context entities (or a
disconnection penalty) plus a weighted compression estimate of the relation
path that reaches it.
"""
from .complexity import (
    ComplexityEstimate,
    CorpusCompressor,
    build_relation_corpus,
    encode_path,
    kolmogorov_estimate,
)
from .errors import CorruptStreamError, InvalidInputError, KGError, UnknownLabelError
from .graph import GraphBuilder, KnowledgeGraph, Triple
from .ingest import ParseDiagnostic, ParseError, load_graph, parse_ntriples, parse_tsv, write_tsv
from .scoring import (
    EPISTEMIC,
    PRAGMATIC,
    ScoreCard,
    Scorer,
    ScoringParams,
    epistemic_rank,
    free_energy,
    rank_candidates,
    score_entity,
)
from .traversal import (
    UNREACHED,
    Context,
    DistanceMap,
    RelationPath,
    diameter,
    geometric_surprise,
    multi_source_bfs,
    shortest_relation_path,
    suggested_alpha,
)

__version__ = "0.1.0"
