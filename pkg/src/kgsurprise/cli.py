"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 parse or data error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence, TextIO

from .errors import KGError
from .graph import KnowledgeGraph
from .ingest import load_graph
from .scoring import MODES, PRAGMATIC, ScoreCard, Scorer, ScoringParams
from .traversal import Context, diameter, multi_source_bfs, shortest_relation_path

SCHEMA_VERSION = 1
EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _split(value: str) -> list[str]:
    items = [v.strip() for v in value.split(",")]
    return [v for v in items if v]


def _num(value: float):
    return int(value) if float(value).is_integer() and not isinstance(value, bool) else value


def _fmt(value) -> str:
    """Render a value exactly as it appears in JSON output."""
    return json.dumps(value, ensure_ascii=False)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="kgsurprise", description="Free-energy scoring of knowledge-graph groundings.")
    sub = parser.add_subparsers(dest="command", metavar="{rank,score,distances,explain,stats}", parser_class=_Parser)
    sub.required = True

    def common(p, context=True):
        p.add_argument("--graph", required=True, metavar="PATH", help="TSV triple file or .nt N-Triples file")
        if context:
            p.add_argument("--context", required=True, metavar="LIST", help="comma-separated context entity labels")
        p.add_argument("--format", choices=("table", "json"), default="table")

    def scoring(p):
        p.add_argument("--alpha", type=float, metavar="N", help="disconnection penalty (default: diameter + 1)")
        p.add_argument("--lambda", dest="lam", type=float, default=1.0, metavar="X", help="complexity weight (default 1.0)")

    for name, helptext in (("rank", "rank candidates by free energy"), ("score", "score candidates in the given order")):
        p = sub.add_parser(name, help=helptext)
        common(p)
        scoring(p)
        group = p.add_mutually_exclusive_group(required=True)
        group.add_argument("--candidates", metavar="LIST", help="comma-separated candidate labels")
        group.add_argument("--candidates-file", metavar="PATH", help="file with one candidate label per line")
        if name == "rank":
            p.add_argument("--mode", choices=MODES, default=PRAGMATIC)

    p = sub.add_parser("distances", help="hop distances from the context to every entity")
    common(p)

    p = sub.add_parser("explain", help="show the shortest relation path to an entity")
    common(p)
    p.add_argument("--entity", required=True, metavar="LABEL")
    p.add_argument("--alpha", type=float, metavar="N", help="disconnection penalty shown for unreachable targets")

    p = sub.add_parser("stats", help="graph size, diameter and suggested alpha")
    common(p, context=False)
    return parser


def _record(graph: KnowledgeGraph, card: ScoreCard) -> dict:
    return {
        "entity": graph.entity_label(card.entity),
        "distance": card.distance,
        "s_geo": _num(card.s_geo),
        "k": card.k,
        "f": card.f,
        "path": None if card.path is None else card.path.labels(graph),
    }


def _table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        widths = [max(w, len(c)) for w, c in zip(widths, row)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(headers, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _dump(payload: dict) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=2) + "\n"


def _alpha(args, graph, stderr) -> float:
    if args.alpha is not None:
        if not args.alpha > 0:
            raise UsageError(f"--alpha must be positive, got {args.alpha}")
        return _num(args.alpha)
    alpha = diameter(graph) + 1
    print(f"kgsurprise: --alpha not given; using diameter + 1 = {alpha}", file=stderr)
    return alpha


def _candidates(args) -> list[str]:
    if args.candidates_file:
        text = Path(args.candidates_file).read_text(encoding="utf-8")
        labels = [line.strip() for line in text.splitlines() if line.strip()]
    else:
        labels = _split(args.candidates)
    if not labels:
        raise UsageError("no candidates given")
    return labels


def _context(args, graph) -> Context:
    labels = _split(args.context)
    if not labels:
        raise UsageError("--context is empty")
    return Context.of(graph, labels)


def _cmd_scores(args, graph, out, err):
    context = _context(args, graph)
    candidates = [graph.entity_id(c) for c in _candidates(args)]
    if args.lam < 0:
        raise UsageError(f"--lambda must be non-negative, got {args.lam}")
    mode = getattr(args, "mode", PRAGMATIC)
    params = ScoringParams(alpha=_alpha(args, graph, err), lam=_num(args.lam), mode=mode)
    scorer = Scorer(graph, context, params)
    cards = scorer.rank(candidates) if args.command == "rank" else scorer.score_many(candidates)
    records = [_record(graph, c) for c in cards]
    if args.format == "json":
        out.write(_dump({
            "schema": SCHEMA_VERSION,
            "command": args.command,
            "context": [graph.entity_label(c) for c in context],
            "alpha": params.alpha,
            "lambda": params.lam,
            "mode": mode,
            "results": records,
        }))
        return
    rows = []
    for i, (rec, card) in enumerate(zip(records, cards), 1):
        rows.append([
            str(i), rec["entity"], _fmt(rec["distance"]), _fmt(rec["s_geo"]), _fmt(rec["k"]), _fmt(rec["f"]),
            card.path.render(graph) if card.path is not None else "no path",
        ])
    out.write(_table(["rank", "entity", "distance", "s_geo", "k", "f", "path"], rows))


def _cmd_distances(args, graph, out, err):
    context = _context(args, graph)
    dm = multi_source_bfs(graph, context)
    pairs = [(label, dm.distance(i)) for i, label in enumerate(graph.entity_labels)]
    if args.format == "json":
        out.write(_dump({
            "schema": SCHEMA_VERSION,
            "command": "distances",
            "context": [graph.entity_label(c) for c in context],
            "distances": [{"entity": label, "distance": d} for label, d in pairs],
        }))
    else:
        out.write(_table(["entity", "distance"], [[label, _fmt(d)] for label, d in pairs]))


def _cmd_explain(args, graph, out, err):
    context = _context(args, graph)
    target = graph.entity_id(args.entity)
    dm = multi_source_bfs(graph, context)
    path = shortest_relation_path(graph, dm, target)
    alpha = None
    if path is None:
        alpha = _alpha(args, graph, err)
    if args.format == "json":
        out.write(_dump({
            "schema": SCHEMA_VERSION,
            "command": "explain",
            "context": [graph.entity_label(c) for c in context],
            "entity": args.entity.strip(),
            "distance": None if path is None else len(path),
            "path": None if path is None else path.labels(graph),
            "alpha": alpha,
        }))
    elif path is None:
        out.write(f"no path from context to {args.entity.strip()} (surprise = alpha = {_fmt(alpha)})\n")
    elif len(path) == 0:
        out.write(f"{args.entity.strip()} is in the context (zero-length path, surprise = 0)\n")
    else:
        out.write(path.render(graph) + "\n")


def _cmd_stats(args, graph, out, err):
    d = diameter(graph)
    stats = {
        "entities": graph.num_entities,
        "relations": graph.num_relations,
        "edges": graph.num_edges,
        "diameter": d,
        "suggested_alpha": d + 1,
    }
    if args.format == "json":
        out.write(_dump({"schema": SCHEMA_VERSION, "command": "stats", **stats}))
    else:
        out.write(_table(["statistic", "value"], [[k, str(v)] for k, v in stats.items()]))


COMMANDS = {
    "rank": _cmd_scores,
    "score": _cmd_scores,
    "distances": _cmd_distances,
    "explain": _cmd_explain,
    "stats": _cmd_stats,
}


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    out = sys.stdout if stdout is None else stdout
    err = sys.stderr if stderr is None else stderr
    try:
        args = build_parser().parse_args(argv)
        try:
            graph = load_graph(args.graph)
        except OSError as exc:
            print(f"kgsurprise: error: cannot read graph {args.graph}: {exc.strerror or exc}", file=err)
            return EXIT_DATA
        COMMANDS[args.command](args, graph, out, err)
    except UsageError as exc:
        print(f"kgsurprise: error: {exc} (try --help)", file=err)
        return EXIT_USAGE
    except OSError as exc:
        print(f"kgsurprise: error: {exc}", file=err)
        return EXIT_DATA
    except KGError as exc:
        print(f"kgsurprise: error: {exc}", file=err)
        return EXIT_DATA
    return EXIT_OK


def main() -> None:
    for stream in (sys.stdout, sys.stderr):
        if hasattr(stream, "reconfigure"):
            stream.reconfigure(encoding="utf-8")
    sys.exit(run())


if __name__ == "__main__":
    main()
