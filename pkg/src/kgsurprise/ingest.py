"""Parsers for triple files.

Two formats are accepted, both UTF-8 with LF or CRLF line endings:

* TSV: ``head<TAB>relation<TAB>tail`` per line. A line with a single field
  declares an entity with no edges. Blank lines and lines starting with
  ``#`` are ignored.
* N-Triples subset: ``<iri> <iri> <iri> .`` per line. Literals and blank
  nodes are rejected.

Parsing is all-or-nothing: the first bad line raises :class:`ParseError`.
"""
from __future__ import annotations

import io
import itertools
import re
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, TextIO, Union

import numpy as np

from .errors import InvalidInputError, KGError
from .graph import GraphBuilder, KnowledgeGraph

Source = Union[bytes, bytearray, BinaryIO]

MALFORMED_FIELDS = "malformed-fields"
EMPTY_LABEL = "empty-label"
BAD_TERMINATOR = "bad-terminator"
ENCODING = "encoding"
UNSUPPORTED_LITERAL = "unsupported-literal"
BLANK_NODE = "blank-node"


@dataclass(frozen=True)
class ParseDiagnostic:
    line: int
    kind: str
    excerpt: str

    def __str__(self):
        return f"line {self.line}: {self.kind}: {self.excerpt!r}"


class ParseError(KGError):
    def __init__(self, diagnostic: ParseDiagnostic, source: str | None = None):
        self.diagnostic = diagnostic
        self.source = source
        super().__init__(diagnostic)

    def __str__(self):
        where = f"{self.source}: " if self.source else ""
        return f"{where}{self.diagnostic}"


def _read_bytes(source: Source) -> bytes:
    if isinstance(source, (bytes, bytearray, memoryview)):
        return bytes(source)
    data = source.read()
    if isinstance(data, str):
        raise InvalidInputError("expected a binary stream, got text")
    return data


def _lines(data: bytes):
    """Yield (1-based line number, text) with line terminators removed."""
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        line = data.count(b"\n", 0, exc.start) + 1
        start = data.rfind(b"\n", 0, exc.start) + 1
        end = data.find(b"\n", exc.start)
        excerpt = data[start : end if end >= 0 else len(data)].decode("utf-8", "replace")
        raise ParseError(ParseDiagnostic(line, ENCODING, excerpt)) from None
    if text.startswith("\ufeff"):
        text = text[1:]
    for lineno, line in enumerate(text.split("\n"), 1):
        if line.endswith("\r"):
            line = line[:-1]
        yield lineno, line


def _regular_tsv(data: bytes) -> bool:
    """True when every line is a non-comment row with exactly two tabs."""
    arr = np.frombuffer(data, dtype=np.uint8)
    if arr.size == 0:
        return False
    newlines = np.flatnonzero(arr == 10)
    starts = np.concatenate(([0], newlines + 1))
    ends = np.concatenate((newlines, [arr.size]))
    tab_count = np.concatenate(([0], np.cumsum(arr == 9)))
    if not np.all(tab_count[ends] - tab_count[starts] == 2):
        return False
    # a row starting with '#' would be a comment
    return not np.any(arr[starts] == 35)


def _parse_regular_tsv(data: bytes) -> KnowledgeGraph | None:
    """Bulk path for files of plain triple rows; ``None`` means use the line parser."""
    text = data.decode("utf-8")
    fields = text.replace("\n", "\t").split("\t")
    heads, rels, tails = fields[0::3], fields[1::3], fields[2::3]
    interleaved = [None] * (2 * len(heads))
    interleaved[0::2] = heads
    interleaved[1::2] = tails
    entity_ids = dict.fromkeys(interleaved)
    relation_ids = dict.fromkeys(rels)
    for label in itertools.chain(entity_ids, relation_ids):
        if not label or label[0].isspace() or label[-1].isspace():
            return None
    entity_ids = dict(zip(entity_ids, range(len(entity_ids))))
    relation_ids = dict(zip(relation_ids, range(len(relation_ids))))
    builder = GraphBuilder.from_interned(
        entity_ids,
        relation_ids,
        list(map(entity_ids.__getitem__, heads)),
        list(map(relation_ids.__getitem__, rels)),
        list(map(entity_ids.__getitem__, tails)),
    )
    return builder.build()


def parse_tsv(source: Source) -> KnowledgeGraph:
    data = _read_bytes(source)
    body = data.replace(b"\r\n", b"\n")
    if body.startswith(b"\xef\xbb\xbf"):
        body = body[3:]
    if body.endswith(b"\n"):
        body = body[:-1]
    if _regular_tsv(body):
        try:
            graph = _parse_regular_tsv(body)
        except UnicodeDecodeError:
            graph = None
        if graph is not None:
            return graph
    return _parse_tsv_lines(data)


def _parse_tsv_lines(data: bytes) -> KnowledgeGraph:
    builder = GraphBuilder()
    intern_entity, intern_relation = builder.intern_entity, builder.intern_relation
    # raw field text -> id; skips re-trimming labels already seen
    entity_cache: dict[str, int] = {}
    relation_cache: dict[str, int] = {}
    eget, rget = entity_cache.get, relation_cache.get
    heads, rels, tails = [], [], []
    for lineno, line in _lines(data):
        if not line or line[0] == "#":
            continue
        fields = line.split("\t")
        if len(fields) == 3:
            h, r, t = fields
            hi, ri, ti = eget(h), rget(r), eget(t)
            if hi is None or ri is None or ti is None:
                if not (h.strip() and r.strip() and t.strip()):
                    raise ParseError(ParseDiagnostic(lineno, EMPTY_LABEL, line))
                if hi is None:
                    hi = entity_cache[h] = intern_entity(h)
                if ri is None:
                    ri = relation_cache[r] = intern_relation(r)
                if ti is None:
                    ti = eget(t)  # h may equal t
                    if ti is None:
                        ti = entity_cache[t] = intern_entity(t)
            heads.append(hi)
            rels.append(ri)
            tails.append(ti)
        elif line.isspace():
            continue
        elif len(fields) == 1:
            intern_entity(line)
        else:
            raise ParseError(ParseDiagnostic(lineno, MALFORMED_FIELDS, line))
    builder.extend_ids(heads, rels, tails)
    return builder.build()


_TERM = re.compile(
    r"""\s*(?:
        <(?P<iri>[^<>"{}|^`\\\s]*)>
      | (?P<blank>_:\S+)
      | (?P<literal>"(?:[^"\\]|\\.)*"(?:@[A-Za-z0-9-]+|\^\^<[^>]*>)?)
    )""",
    re.VERBOSE,
)


def _ntriples_line(lineno: int, line: str) -> tuple[str, str, str]:
    terms = []
    pos = 0
    while len(terms) < 3:
        m = _TERM.match(line, pos)
        if m is None:
            raise ParseError(ParseDiagnostic(lineno, MALFORMED_FIELDS, line))
        if m.group("blank") is not None:
            raise ParseError(ParseDiagnostic(lineno, BLANK_NODE, line))
        if m.group("literal") is not None:
            raise ParseError(ParseDiagnostic(lineno, UNSUPPORTED_LITERAL, line))
        iri = m.group("iri")
        if not iri:
            raise ParseError(ParseDiagnostic(lineno, EMPTY_LABEL, line))
        terms.append(iri)
        pos = m.end()
    rest = line[pos:].strip()
    if rest == "." or (rest.startswith(".") and rest[1:].lstrip().startswith("#")):
        return terms[0], terms[1], terms[2]
    if not rest or rest.startswith("#"):
        raise ParseError(ParseDiagnostic(lineno, BAD_TERMINATOR, line))
    raise ParseError(ParseDiagnostic(lineno, MALFORMED_FIELDS, line))


def parse_ntriples(source: Source) -> KnowledgeGraph:
    builder = GraphBuilder()
    for lineno, line in _lines(_read_bytes(source)):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        builder.add_triple(*_ntriples_line(lineno, line))
    return builder.build()


def load_graph(path: str | Path) -> KnowledgeGraph:
    """Parse a file, choosing the format from its extension (``.nt`` or TSV)."""
    path = Path(path)
    data = path.read_bytes()
    try:
        if path.suffix.lower() == ".nt":
            return parse_ntriples(data)
        return parse_tsv(data)
    except ParseError as exc:
        exc.source = str(path)
        raise


def write_tsv(graph: KnowledgeGraph, stream: TextIO | None = None) -> str:
    """Serialize ``graph`` so that :func:`parse_tsv` rebuilds it exactly.

    Every entity is declared first (fixing entity ids), then triples are
    written ordered by relation id so relations are re-interned in the same
    order.
    """
    for label in graph.entity_labels + graph.relation_labels:
        if "\t" in label or "\n" in label or "\r" in label or label.startswith("#"):
            raise InvalidInputError(f"label {label!r} cannot be written as TSV")
    out = io.StringIO() if stream is None else stream
    for label in graph.entity_labels:
        out.write(label + "\n")
    E, R = graph.entity_labels, graph.relation_labels
    for h, r, t in sorted(graph.triples(), key=lambda tr: (tr.relation, tr.head, tr.tail)):
        out.write(f"{E[h]}\t{R[r]}\t{E[t]}\n")
    return out.getvalue() if stream is None else ""
