"""Time loading, one multi-source BFS and candidate scoring on a preferential-attachment graph."""
import argparse
import time

import numpy as np

from kgsurprise import Scorer, ScoringParams, parse_tsv
from kgsurprise.synthetic import preferential_attachment_triples, triples_to_tsv


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--edges", type=int, default=1_000_000)
    parser.add_argument("--candidates", type=int, default=1000)
    parser.add_argument("--relations", type=int, default=16)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    data = triples_to_tsv(preferential_attachment_triples(args.edges, num_relations=args.relations, seed=args.seed))
    t0 = time.perf_counter()
    g = parse_tsv(data)
    t1 = time.perf_counter()
    scorer = Scorer(g, [0, 1], ScoringParams(alpha=100))
    t2 = time.perf_counter()
    rng = np.random.default_rng(args.seed)
    cands = rng.choice(g.num_entities, min(args.candidates, g.num_entities), replace=False).tolist()
    cards = scorer.rank(cands)
    t3 = time.perf_counter()

    reached = sum(c.reached for c in cards)
    print(g)
    print(f"load      {t1 - t0:7.3f} s")
    print(f"bfs+corpus{t2 - t1:7.3f} s")
    print(f"score     {t3 - t2:7.3f} s  ({len(cards)} candidates, {reached} reached)")
    print(f"total     {t3 - t0:7.3f} s")
    best = cards[0]
    print(f"best: {g.entity_label(best.entity)} F={best.f:.3f} via {best.path.render(g) if best.path else 'no path'}")


if __name__ == "__main__":
    main()
