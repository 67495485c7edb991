"""Independent brute-force references used by the test-suite.

Nothing here imports the search engine, the canonical labeller or the
tree-depth kernels; each oracle works straight from definitions.
"""

from __future__ import annotations

from itertools import combinations, permutations, product


def maps(a, b):
    """Every map universe(a) -> universe(b) preserving all tuples."""
    rels = list(zip(a.relations, b.relations))
    for f in product(range(b.n), repeat=a.n):
        if all(tuple(f[x] for x in t) in rb for ra, rb in rels for t in ra):
            yield f


def hom_exists(a, b) -> bool:
    return next(maps(a, b), None) is not None


def hom_count(a, b) -> int:
    return sum(1 for _ in maps(a, b))


def subgraph_iso(f, g) -> bool:
    """Injective edge-preserving map (F isomorphic to a subgraph of G)."""
    for img in permutations(range(g.n), f.n):
        if all(g.has_edge(img[u], img[v]) for u, v in f.edges):
            return True
    return False


def graph_key(n, edges):
    """Isomorphism-invariant key: lexicographically least relabelled edge list."""
    best = None
    for p in permutations(range(n)):
        es = tuple(sorted(tuple(sorted((p[u], p[v]))) for u, v in edges))
        if best is None or es < best:
            best = es
    return (n, best)


def iso_classes(n):
    """Number of graphs on n vertices up to isomorphism, by generate-and-filter."""
    pairs = list(combinations(range(n), 2))
    keys = set()
    for mask in range(1 << len(pairs)):
        es = [pairs[i] for i in range(len(pairs)) if mask >> i & 1]
        keys.add(graph_key(n, es))
    return len(keys)


def isomorphic(a, b) -> bool:
    if a.n != b.n or a.num_tuples() != b.num_tuples():
        return False
    for p in permutations(range(a.n)):
        ok = all(
            frozenset(tuple(p[x] for x in t) for t in ra) == rb
            for ra, rb in zip(a.relations, b.relations)
        )
        if ok:
            return True
    return False


def chromatic(g) -> int:
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        for c in product(range(k), repeat=g.n):
            if all(c[u] != c[v] for u, v in g.edges):
                return k
    return g.n


_FORESTS = {}


def _forests(n):
    """(height, ancestor-pair masks) of every rooted forest on n labelled vertices."""
    if n in _FORESTS:
        return _FORESTS[n]
    out = []
    for parent in product(range(-1, n), repeat=n):
        depth = [0] * n
        anc = [0] * n
        ok = True
        for v in range(n):
            seen, x, d, m = set(), v, 0, 0
            while parent[x] != -1:
                if x in seen or parent[x] == x:
                    ok = False
                    break
                seen.add(x)
                x = parent[x]
                m |= 1 << x
                d += 1
            if not ok:
                break
            depth[v], anc[v] = d + 1, m
        if ok:
            out.append((max(depth, default=0), anc))
    out.sort(key=lambda f: f[0])
    _FORESTS[n] = out
    return out


def tree_depth(g) -> int:
    """Minimum height of a rooted forest whose closure contains every edge."""
    if g.n == 0:
        return 0
    for height, anc in _forests(g.n):
        if all(anc[u] >> v & 1 or anc[v] >> u & 1 for u, v in g.edges):
            return height
    raise AssertionError("unreachable")


def _matmul(x, y):
    n = len(x)
    return [[sum(x[i][k] * y[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def odd_girth(g):
    """Least odd k with a closed walk of length k (trace of A^k), else inf."""
    n = g.n
    a = [[1 if g.has_edge(i, j) else 0 for j in range(n)] for i in range(n)]
    power = a
    for k in range(1, n + 1):
        if k > 1:
            power = _matmul(power, a)
        if k % 2 == 1 and k >= 3 and sum(power[i][i] for i in range(n)) > 0:
            return k
    return float("inf")


def girth(g):
    """Shortest cycle by trying every vertex sequence."""
    for k in range(3, g.n + 1):
        for seq in permutations(range(g.n), k):
            if seq[0] != min(seq):
                continue
            if all(g.has_edge(seq[i], seq[(i + 1) % k]) for i in range(k)):
                return k
    return float("inf")
