import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kgsurprise import (
    Context,
    GraphBuilder,
    InvalidInputError,
    KnowledgeGraph,
    diameter,
    geometric_surprise,
    multi_source_bfs,
    shortest_relation_path,
)
from oracles import fifo_bfs, simple_path_distances


def ids(g, *labels):
    return [g.entity_id(x) for x in labels]


def test_canada_distances(canada):
    dm = multi_source_bfs(canada, Context.of(canada, ["Canada"]))
    got = {canada.entity_label(e): d for e, d in dm.as_dict().items()}
    assert got == {"Canada": 0, "Trudeau": 1, "Harper": 1, "PrimeMinister": 2, "Biden": None}


def test_two_sources(canada):
    dm = multi_source_bfs(canada, Context.of(canada, ["Canada", "Trudeau"]))
    trudeau, pm = ids(canada, "Trudeau", "PrimeMinister")
    assert dm.distance(trudeau) == 0
    assert dm.distance(pm) == 1
    assert dm.parent(trudeau) is None


def test_chain():
    g = KnowledgeGraph.from_triples([("a", "r", "b"), ("b", "r", "c")])
    assert multi_source_bfs(g, [0]).distance(2) == 2


def test_empty_context_rejected(canada):
    with pytest.raises(InvalidInputError):
        multi_source_bfs(canada, [])
    with pytest.raises(InvalidInputError):
        multi_source_bfs(canada, [17])


def test_geometric_surprise(canada):
    dm = multi_source_bfs(canada, Context.of(canada, ["Canada"]))
    canada_id, trudeau, harper, pm, biden = ids(canada, "Canada", "Trudeau", "Harper", "PrimeMinister", "Biden")
    assert [geometric_surprise(dm, e, 5) for e in (trudeau, harper, pm, biden)] == [1, 1, 2, 5]
    assert geometric_surprise(dm, canada_id, 5) == 0
    with pytest.raises(InvalidInputError):
        geometric_surprise(dm, trudeau, 0)
    with pytest.raises(InvalidInputError):
        geometric_surprise(dm, 99, 5)


def test_relation_paths(canada):
    dm = multi_source_bfs(canada, Context.of(canada, ["Canada"]))
    rel = canada.relation_label
    trudeau, pm, biden = ids(canada, "Trudeau", "PrimeMinister", "Biden")
    assert [rel(r) for r in shortest_relation_path(canada, dm, trudeau).relations] == ["hasLeader"]
    path = shortest_relation_path(canada, dm, pm)
    assert [rel(r) for r in path.relations] == ["hasLeader", "holdsPosition"]
    # Trudeau precedes Harper in file order, so the tie-break routes through Trudeau
    assert path.render(canada) == "Canada -hasLeader-> Trudeau -holdsPosition-> PrimeMinister"
    assert path.labels(canada) == ["Canada", "hasLeader", "Trudeau", "holdsPosition", "PrimeMinister"]
    assert shortest_relation_path(canada, dm, biden) is None


def test_cycle_does_not_change_distances(canada):
    no_cycle = KnowledgeGraph.from_triples(
        [t for t in canada.label_triples() if t[1] not in ("successor", "predecessor")], entities=canada.entity_labels
    )
    a = multi_source_bfs(canada, [0]).as_dict()
    b = multi_source_bfs(no_cycle, [0]).as_dict()
    assert a == b


def test_diameter_examples(canada):
    assert diameter(canada) == 2
    b = GraphBuilder()
    b.intern_entity("solo")
    assert diameter(b.build()) == 0
    assert diameter(KnowledgeGraph.from_triples([("a", "r", "b"), ("b", "r", "c"), ("c", "r", "d")])) == 3


def brute_force_diameter(g):
    n = g.num_entities
    edges = list(g.triples())
    best = 0
    for s in range(n):
        ds = simple_path_distances(n, edges, [s])
        best = max([best] + [d for d in ds if d is not None])
    return best


def test_diameter_matches_brute_force_on_canada(canada):
    assert brute_force_diameter(canada) == diameter(canada) == 2


@st.composite
def small_graphs(draw, max_nodes=10):
    n = draw(st.integers(1, max_nodes))
    pairs = list(itertools.product(range(n), range(n)))
    edges = draw(st.lists(st.tuples(st.sampled_from(pairs), st.integers(0, 2)), max_size=3 * n))
    b = GraphBuilder()
    for i in range(n):
        b.intern_entity(f"v{i}")
    for (u, v), r in edges:
        b.add_triple(f"v{u}", f"r{r}", f"v{v}")
    g = b.build()
    sources = draw(st.lists(st.integers(0, n - 1), min_size=1, max_size=3))
    return g, sources


@given(small_graphs())
@settings(max_examples=200)
def test_matches_simple_path_enumeration(case):
    g, sources = case
    dm = multi_source_bfs(g, sources)
    expected = simple_path_distances(g.num_entities, list(g.triples()), sources)
    assert [dm.distance(v) for v in range(g.num_entities)] == expected


@given(small_graphs())
@settings(max_examples=200)
def test_parents_match_fifo_queue_bfs(case):
    g, sources = case
    dm = multi_source_bfs(g, sources)
    dist, parent = fifo_bfs(g, sources)
    for v in range(g.num_entities):
        assert dm.distance(v) == dist.get(v)
        assert dm.parent(v) == parent.get(v)


@given(small_graphs())
@settings(max_examples=100)
def test_distance_map_invariants(case):
    g, sources = case
    dm = multi_source_bfs(g, sources)
    edges = set(g.triples())
    for c in sources:
        assert dm.distance(c) == 0
    for v in range(g.num_entities):
        p = dm.parent(v)
        if p is not None:
            u, r = p
            assert dm.distance(v) == dm.distance(u) + 1
            assert (u, r, v) in edges
        if dm.distance(v) is None:
            assert p is None
        path = shortest_relation_path(g, dm, v)
        if path is None:
            assert dm.distance(v) is None
        else:
            assert len(path) == dm.distance(v)
            assert path.nodes[0] in sources
            for a, r, b in zip(path.nodes, path.relations, path.nodes[1:]):
                assert (a, r, b) in edges


@given(small_graphs())
@settings(max_examples=100)
def test_triangle_inequality_single_source(case):
    g, sources = case
    dm = multi_source_bfs(g, sources[:1])
    for u, _, v in g.triples():
        du, dv = dm.distance(u), dm.distance(v)
        if du is not None:
            assert dv is not None and dv <= du + 1


@given(small_graphs(), st.integers(0, 9), st.integers(0, 9))
@settings(max_examples=100)
def test_adding_a_triple_never_hurts(case, a, b):
    g, sources = case
    n = g.num_entities
    before = multi_source_bfs(g, sources)
    bigger = KnowledgeGraph.from_triples(
        list(g.label_triples()) + [(f"v{a % n}", "extra", f"v{b % n}")], entities=g.entity_labels
    )
    after = multi_source_bfs(bigger, sources)
    for v in range(n):
        if before.distance(v) is not None:
            assert after.distance(v) is not None and after.distance(v) <= before.distance(v)


@given(small_graphs())
@settings(max_examples=50)
def test_deterministic(case):
    g, sources = case
    a, b = multi_source_bfs(g, sources), multi_source_bfs(g, list(reversed(sources)))
    assert a == b
    for v in range(g.num_entities):
        assert shortest_relation_path(g, a, v) == shortest_relation_path(g, b, v)


@given(small_graphs(max_nodes=7))
@settings(max_examples=100)
def test_diameter_matches_brute_force(case):
    g, _ = case
    assert diameter(g) == brute_force_diameter(g)


def test_path_is_lexicographically_least():
    # two shortest routes a->c: via b (relation id 1) and via d (relation id 0)
    g = KnowledgeGraph.from_triples([("b", "r0", "c"), ("a", "r1", "b"), ("a", "r0", "d"), ("d", "r0", "c")])
    assert g.relation_id("r0") == 0
    dm = multi_source_bfs(g, [g.entity_id("a")])
    path = shortest_relation_path(g, dm, g.entity_id("c"))
    assert path.render(g) == "a -r0-> d -r0-> c"
