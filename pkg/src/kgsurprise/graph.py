"""Interned, immutable directed multigraph of (head, relation, tail) triples.

Entities and relations are interned to dense integer ids in first-seen order.
Edges are stored in CSR form: ``offsets[e]:offsets[e + 1]`` slices the
``rels``/``tails`` arrays for entity ``e``, sorted by ``(relation, tail)``.
"""
from __future__ import annotations

from array import array
from typing import Iterable, Iterator, NamedTuple

import numpy as np

from .errors import InvalidInputError, UnknownLabelError

EntityId = int
RelationId = int


class Triple(NamedTuple):
    head: EntityId
    relation: RelationId
    tail: EntityId


def _clean(label: str, what: str) -> str:
    if not isinstance(label, str):
        raise InvalidInputError(f"{what} label must be a string, got {type(label).__name__}")
    label = label.strip()
    if not label:
        raise InvalidInputError(f"empty {what} label")
    return label


class _Interner:
    __slots__ = ("ids", "labels")

    def __init__(self):
        self.ids: dict[str, int] = {}
        self.labels: list[str] = []

    def intern(self, label: str) -> int:
        idx = self.ids.get(label)
        if idx is None:
            idx = len(self.labels)
            self.ids[label] = idx
            self.labels.append(label)
        return idx


class GraphBuilder:
    """Mutable construction phase; call :meth:`build` to freeze."""

    def __init__(self):
        self._entities = _Interner()
        self._relations = _Interner()
        self._heads = array("q")
        self._rels = array("q")
        self._tails = array("q")
        self._chunks: list[tuple[np.ndarray, np.ndarray, np.ndarray]] = []

    def intern_entity(self, label: str) -> EntityId:
        return self._entities.intern(_clean(label, "entity"))

    def intern_relation(self, label: str) -> RelationId:
        return self._relations.intern(_clean(label, "relation"))

    def add_triple(self, head: str, relation: str, tail: str) -> None:
        # validate all three before interning anything
        h, r, t = _clean(head, "entity"), _clean(relation, "relation"), _clean(tail, "entity")
        self._heads.append(self._entities.intern(h))
        self._rels.append(self._relations.intern(r))
        self._tails.append(self._entities.intern(t))

    @classmethod
    def from_interned(cls, entity_labels, relation_labels, heads, rels, tails) -> "GraphBuilder":
        """Builder seeded with already-clean, distinct labels and id triples."""
        builder = cls()
        builder._entities.labels = list(entity_labels)
        builder._entities.ids = dict(zip(builder._entities.labels, range(len(builder._entities.labels))))
        builder._relations.labels = list(relation_labels)
        builder._relations.ids = dict(zip(builder._relations.labels, range(len(builder._relations.labels))))
        if len(builder._entities.ids) != len(builder._entities.labels) or len(builder._relations.ids) != len(builder._relations.labels):
            raise InvalidInputError("duplicate labels")
        builder.extend_ids(heads, rels, tails)
        return builder

    def extend_ids(self, heads, rels, tails) -> None:
        """Append triples given as already-interned ids (bulk loaders)."""
        cols = [np.asarray(c, dtype=np.int64) for c in (heads, rels, tails)]
        if not cols[0].shape == cols[1].shape == cols[2].shape or cols[0].ndim != 1:
            raise InvalidInputError("id sequences differ in length")
        n_e, n_r = len(self._entities.labels), len(self._relations.labels)
        for col, bound in zip(cols, (n_e, n_r, n_e)):
            if col.size and not (col.min() >= 0 and col.max() < bound):
                raise InvalidInputError("id out of range")
        self._chunks.append(tuple(cols))

    def add_triples(self, triples: Iterable[tuple[str, str, str]]) -> None:
        for h, r, t in triples:
            self.add_triple(h, r, t)

    @property
    def num_entities(self) -> int:
        return len(self._entities.labels)

    def build(self) -> "KnowledgeGraph":
        n = len(self._entities.labels)
        columns = [
            np.frombuffer(col, dtype=np.int64) if len(col) else np.empty(0, np.int64)
            for col in (self._heads, self._rels, self._tails)
        ]
        if self._chunks:
            columns = [np.concatenate([c[i] for c in self._chunks] + [columns[i]]) for i in range(3)]
        heads, rels, tails = columns
        heads, rels, tails = _sort_unique(heads, rels, tails, n, len(self._relations.labels))
        offsets = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(heads, minlength=n), out=offsets[1:])
        return KnowledgeGraph(
            tuple(self._entities.labels),
            tuple(self._relations.labels),
            offsets,
            rels.astype(np.int32),
            tails.astype(np.int32),
        )


def _sort_unique(heads, rels, tails, n_entities, n_relations, pack=True):
    """Distinct triples sorted by (head, relation, tail)."""
    if not heads.size:
        return heads, rels, tails
    n, n_r = max(n_entities, 1), max(n_relations, 1)
    if pack and n * n * n_r < 2**62:
        key = np.unique((heads * n_r + rels) * n + tails)
        heads, rest = np.divmod(key, n_r * n)
        rels, tails = np.divmod(rest, n)
        return heads, rels, tails
    order = np.lexsort((tails, rels, heads))
    heads, rels, tails = heads[order], rels[order], tails[order]
    keep = np.ones(heads.size, dtype=bool)
    keep[1:] = (np.diff(heads) != 0) | (np.diff(rels) != 0) | (np.diff(tails) != 0)
    return heads[keep], rels[keep], tails[keep]


class KnowledgeGraph:
    """Frozen graph. Construct through :class:`GraphBuilder` or the ingest parsers."""

    def __init__(self, entity_labels, relation_labels, offsets, rels, tails):
        self._entity_labels = tuple(entity_labels)
        self._relation_labels = tuple(relation_labels)
        self._entity_ids = {label: i for i, label in enumerate(self._entity_labels)}
        self._relation_ids = {label: i for i, label in enumerate(self._relation_labels)}
        for arr in (offsets, rels, tails):
            arr.flags.writeable = False
        self.offsets = offsets
        self.rels = rels
        self.tails = tails

    @classmethod
    def from_triples(cls, triples: Iterable[tuple[str, str, str]], entities: Iterable[str] = ()) -> "KnowledgeGraph":
        builder = GraphBuilder()
        for label in entities:
            builder.intern_entity(label)
        builder.add_triples(triples)
        return builder.build()

    @property
    def num_entities(self) -> int:
        return len(self._entity_labels)

    @property
    def num_relations(self) -> int:
        return len(self._relation_labels)

    @property
    def num_edges(self) -> int:
        return int(self.tails.size)

    @property
    def entity_labels(self) -> tuple[str, ...]:
        return self._entity_labels

    @property
    def relation_labels(self) -> tuple[str, ...]:
        return self._relation_labels

    def _check_entity(self, entity: EntityId) -> int:
        if isinstance(entity, (bool, np.bool_)) or not isinstance(entity, (int, np.integer)):
            raise InvalidInputError(f"entity id must be an integer, got {entity!r}")
        if not 0 <= entity < len(self._entity_labels):
            raise InvalidInputError(f"entity id {entity} out of range [0, {len(self._entity_labels)})")
        return int(entity)

    def entity_label(self, entity: EntityId) -> str:
        return self._entity_labels[self._check_entity(entity)]

    def relation_label(self, relation: RelationId) -> str:
        if not 0 <= relation < len(self._relation_labels):
            raise InvalidInputError(f"relation id {relation} out of range [0, {len(self._relation_labels)})")
        return self._relation_labels[relation]

    def entity_id(self, label: str) -> EntityId:
        try:
            return self._entity_ids[label.strip()]
        except (KeyError, AttributeError):
            raise UnknownLabelError(label) from None

    def relation_id(self, label: str) -> RelationId:
        try:
            return self._relation_ids[label.strip()]
        except (KeyError, AttributeError):
            raise UnknownLabelError(label, "relation") from None

    def resolve(self, entity: EntityId | str) -> EntityId:
        """Accept either an entity id or a label."""
        if isinstance(entity, str):
            return self.entity_id(entity)
        return self._check_entity(entity)

    def out_edges(self, entity: EntityId) -> list[tuple[RelationId, EntityId]]:
        e = self._check_entity(entity)
        lo, hi = self.offsets[e], self.offsets[e + 1]
        return list(zip(self.rels[lo:hi].tolist(), self.tails[lo:hi].tolist()))

    def triples(self) -> Iterator[Triple]:
        """Stored triples in storage (CSR) order."""
        heads = np.repeat(np.arange(self.num_entities), np.diff(self.offsets))
        for h, r, t in zip(heads.tolist(), self.rels.tolist(), self.tails.tolist()):
            yield Triple(h, r, t)

    def label_triples(self) -> Iterator[tuple[str, str, str]]:
        E, R = self._entity_labels, self._relation_labels
        for h, r, t in self.triples():
            yield E[h], R[r], E[t]

    def __eq__(self, other):
        if not isinstance(other, KnowledgeGraph):
            return NotImplemented
        return (
            self._entity_labels == other._entity_labels
            and self._relation_labels == other._relation_labels
            and np.array_equal(self.offsets, other.offsets)
            and np.array_equal(self.rels, other.rels)
            and np.array_equal(self.tails, other.tails)
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"KnowledgeGraph(entities={self.num_entities}, "
            f"relations={self.num_relations}, edges={self.num_edges})"
        )
