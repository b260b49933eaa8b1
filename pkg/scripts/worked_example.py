"""Print distances, surprise, complexity and free energy for the Canada example graph."""
import argparse
from pathlib import Path

from kgsurprise import Scorer, ScoringParams, build_relation_corpus, diameter, load_graph

ROOT = Path(__file__).resolve().parents[1]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--graph", default=ROOT / "data" / "canada.tsv", type=Path)
    parser.add_argument("--context", default="Canada")
    parser.add_argument("--alpha", type=float, default=5)
    parser.add_argument("--lam", type=float, default=1.0)
    args = parser.parse_args()

    g = load_graph(args.graph)
    print(f"{g}  diameter={diameter(g)}")
    print(f"relation corpus ({len(build_relation_corpus(g))} bytes): {build_relation_corpus(g).decode()}")
    scorer = Scorer(g, args.context.split(","), ScoringParams(alpha=args.alpha, lam=args.lam))
    print(f"\n{'entity':<14} {'d':>4} {'S_geo':>6} {'K':>7} {'F':>7}  path")
    for card in scorer.score_many(list(g.entity_labels)):
        d = "inf" if card.distance is None else card.distance
        path = "no path" if card.path is None else card.path.render(g)
        print(f"{g.entity_label(card.entity):<14} {d:>4} {card.s_geo:>6g} {card.k:>7.3f} {card.f:>7.3f}  {path}")


if __name__ == "__main__":
    main()
