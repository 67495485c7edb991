"""Constructive operations on graphs and structures."""

from __future__ import annotations

from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .canonical import canonical_code
from .errors import ArgumentError, CapacityError
from .structures import Digraph, Graph, Structure, check_same_signature, same_kind

MAX_VERTICES = 100_000


def _check_budget(n: int, budget: int | None) -> None:
    limit = MAX_VERTICES if budget is None else budget
    if n > limit:
        raise CapacityError(f"result would have {n} vertices (budget {limit})")


def subdivide(g: Graph, k: int, budget: int | None = None) -> Graph:
    """Exact k-subdivision: every edge becomes a path with k new internal vertices.

    Original vertices keep ids ``0..n-1``; the internal vertices of the i-th
    edge (in sorted edge order, oriented low to high) follow in path order.
    """
    if k < 0:
        raise ArgumentError("k must be non-negative")
    return subdivide_general(g, {e: k + 1 for e in g.edges}, budget=budget)


def subdivide_general(g: Graph, lengths: Mapping[tuple[int, int], int], budget: int | None = None) -> Graph:
    """Replace each edge ``e`` by a path with ``lengths[e]`` edges."""
    norm = {}
    for e, length in lengths.items():
        u, v = e
        norm[(min(u, v), max(u, v))] = int(length)
    missing = [e for e in g.edges if e not in norm]
    if missing:
        raise ArgumentError(f"no length given for edges {missing}")
    if any(norm[e] < 1 for e in g.edges):
        raise ArgumentError("path lengths must be positive")
    total = g.n + sum(norm[e] - 1 for e in g.edges)
    _check_budget(total, budget)
    nxt = g.n
    edges = []
    for u, v in g.edges:
        prev = u
        for _ in range(norm[(u, v)] - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, v))
    return Graph(total, edges)


def disjoint_union(a: Structure, b: Structure) -> Structure:
    check_same_signature(a, b)
    shift = a.n
    rels = [
        list(ra) + [tuple(x + shift for x in t) for t in rb]
        for ra, rb in zip(a.relations, b.relations)
    ]
    out = Structure(a.sig, a.n + b.n, rels)
    if isinstance(a, Graph) and isinstance(b, Graph):
        return Graph.from_structure(out)
    if isinstance(a, Digraph) and isinstance(b, Digraph):
        return Digraph.from_structure(out)
    return out


def disjoint_union_all(parts: Iterable[Structure], sig=None) -> Structure:
    parts = list(parts)
    if not parts:
        if sig is None:
            raise ArgumentError("empty union needs an explicit signature")
        return Structure(sig, 0)
    out = parts[0]
    for p in parts[1:]:
        out = disjoint_union(out, p)
    return out


def identify_vertices(g: Graph, u: int, v: int) -> Graph:
    """Merge ``v`` into ``u``; a would-be loop is dropped, parallel edges collapse.

    Vertices keep their relative order with ``v`` removed.
    """
    if u == v:
        raise ArgumentError("cannot identify a vertex with itself")
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ArgumentError("vertex out of range")
    new_id = [i - (i > v) for i in range(g.n)]
    new_id[v] = new_id[u]
    edges = set()
    for x, y in g.edges:
        a, b = new_id[x], new_id[y]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return Graph(g.n - 1, edges)


def pre_set(g: Graph, keep_loops: bool = False) -> list[Structure]:
    """All graphs from identifying one unordered vertex pair, up to isomorphism.

    By default the loop created by merging two adjacent vertices is dropped,
    so every result is a simple graph. With ``keep_loops`` such merges give a
    plain structure carrying the loop; then ``g`` maps onto every result, which
    is what the homomorphism decomposition ``F -> G`` iff ``F`` is a subgraph
    of ``G`` or some ``F' -> G`` needs (a looped ``F'`` maps to no simple graph).
    """
    seen = {}
    for u, v in combinations(range(g.n), 2):
        h = identify_vertices(g, u, v)
        if keep_loops and g.has_edge(u, v):
            w = u - (u > v)
            h = Structure(h.sig, h.n, [set(h.relations[0]) | {(w, w)}])
        seen.setdefault(canonical_code(h, cap=None), h)
    return [seen[c] for c in sorted(seen)]


def categorical_product(a: Structure, b: Structure, budget: int | None = None) -> Structure:
    """Universe ``a.n * b.n``; pair ``(x, y)`` has id ``x * b.n + y``."""
    check_same_signature(a, b)
    _check_budget(a.n * b.n, budget)
    m = b.n
    rels = []
    for ra, rb in zip(a.relations, b.relations):
        rels.append(
            [tuple(x * m + y for x, y in zip(ta, tb)) for ta, tb in product(sorted(ra), sorted(rb))]
        )
    out = Structure(a.sig, a.n * b.n, rels)
    if isinstance(a, Graph) and isinstance(b, Graph):
        return Graph.from_structure(out)
    if isinstance(a, Digraph) and isinstance(b, Digraph):
        return Digraph.from_structure(out)
    return out


def gaifman(a: Structure) -> Graph:
    if isinstance(a, Graph):
        return a
    edges = set()
    for (_, arity), ts in zip(a.sig.symbols, a.relations):
        if arity < 2:
            continue
        for t in ts:
            for x, y in combinations(set(t), 2):
                edges.add((min(x, y), max(x, y)))
    return Graph(a.n, edges)


def incidence(a: Structure) -> Graph:
    """Bipartite element/block graph: elements keep ids, blocks follow.

    A :class:`Graph` contributes one block per undirected edge (its two
    stored orientations describe a single edge), so the incidence graph of a
    graph is its 1-subdivision.
    """
    if isinstance(a, Graph):
        blocks = [e for e in a.edges]
    else:
        blocks = [b.tuple for b in a.blocks()]
    edges = []
    for i, t in enumerate(blocks):
        for x in set(t):
            edges.append((x, a.n + i))
    return Graph(a.n + len(blocks), edges)


def induced_substructure(a: Structure, subset: Iterable[int]) -> Structure:
    """Restriction to ``subset``, relabelled in increasing vertex order."""
    keep = sorted(set(int(x) for x in subset))
    for x in keep:
        if not 0 <= x < a.n:
            raise ArgumentError(f"vertex {x} out of range")
    pos = {x: i for i, x in enumerate(keep)}
    rels = [
        [tuple(pos[x] for x in t) for t in ts if all(x in pos for x in t)]
        for ts in a.relations
    ]
    return same_kind(a, Structure(a.sig, len(keep), rels))


def components(a: Structure) -> list[list[int]]:
    """Connected components of the Gaifman graph, each sorted, ordered by least vertex."""
    parent = list(range(a.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for ts in a.relations:
        for t in ts:
            r = find(t[0])
            for x in t[1:]:
                s = find(x)
                if s != r:
                    parent[s] = r
    groups = {}
    for x in range(a.n):
        groups.setdefault(find(x), []).append(x)
    return sorted(groups.values(), key=lambda c: c[0])


def is_connected(a: Structure) -> bool:
    return a.n > 0 and len(components(a)) == 1


def relabel(a: Structure, perm: Sequence[int]) -> Structure:
    """Apply the vertex permutation ``v -> perm[v]``."""
    if sorted(perm) != list(range(a.n)):
        raise ArgumentError("not a permutation")
    rels = [[tuple(perm[x] for x in t) for t in ts] for ts in a.relations]
    return same_kind(a, Structure(a.sig, a.n, rels))


def complement(g: Graph) -> Graph:
    have = set(g.edges)
    return Graph(g.n, [e for e in combinations(range(g.n), 2) if e not in have])
