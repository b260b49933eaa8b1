"""Independent reference implementations used only by the tests."""
from collections import deque


def naive_lz77(data: bytes, window: int = 32768, min_match: int = 3):
    """Quadratic greedy LZ77: try every start in the window, longest wins, nearest on ties.

    Tokens are ``("lit", byte)`` or ``("match", offset, length)``.
    """
    out = []
    pos = 0
    n = len(data)
    while pos < n:
        best_len, best_off = 0, 0
        for j in range(max(0, pos - window), pos):
            length = 0
            while pos + length < n and data[j + length] == data[pos + length]:
                length += 1
            if length >= best_len and length > 0:
                best_len, best_off = length, pos - j
        if best_len >= min_match:
            out.append(("match", best_off, best_len))
            pos += best_len
        else:
            out.append(("lit", data[pos]))
            pos += 1
    return out


def naive_cost(tokens):
    return sum(3 if t[0] == "match" else 1 for t in tokens)


def naive_conditional_cost(path: bytes, corpus: bytes) -> int:
    if not corpus:
        return naive_cost(naive_lz77(path))
    return naive_cost(naive_lz77(corpus + b"|" + path)) - naive_cost(naive_lz77(corpus))


def simple_path_distances(n, edges, sources):
    """Minimum length over all simple directed paths from any source (DFS enumeration)."""
    adj = {u: [] for u in range(n)}
    for u, _, v in edges:
        adj[u].append(v)
    best = {}

    def walk(u, depth, on_path):
        if depth < best.get(u, float("inf")):
            best[u] = depth
        for v in adj[u]:
            if v not in on_path:
                on_path.add(v)
                walk(v, depth + 1, on_path)
                on_path.remove(v)

    for s in sources:
        walk(s, 0, {s})
    return [best.get(v) for v in range(n)]


def fifo_bfs(graph, sources):
    """Queue-and-visited-set BFS over ``graph.out_edges`` with first-parent-wins."""
    dist = {s: 0 for s in sorted(set(sources))}
    parent = {}
    queue = deque(sorted(set(sources)))
    while queue:
        u = queue.popleft()
        for r, v in graph.out_edges(u):
            if v not in dist:
                dist[v] = dist[u] + 1
                parent[v] = (u, r)
                queue.append(v)
    return dist, parent
