"""Sparsity measurements: girth, tree-depth, shallow topological minors,
their grades, low tree-depth colourings, and Dvořák's degree threshold."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from ._kernels import kernel
from .errors import ArgumentError, CapacityError, ConstructionError
from .hom import HomSearchConfig, chromatic_number, clique_number, is_subgraph
from .structures import Graph

INFINITY = math.inf
TD_CAP = 14
CHI_T_CAP = 10
CHI_T_MAX_T = 4
GREEDY_TD_CAP = 24
MINOR_CAP = 7


# --- girth ----------------------------------------------------------------

def girth(g: Graph):
    """Length of a shortest cycle, or ``math.inf`` for forests."""
    best = INFINITY
    adj = g.adj
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def odd_girth(g: Graph):
    """Length of a shortest odd cycle, or ``math.inf`` for bipartite graphs.

    From every root, an edge inside one BFS layer at distance d closes an odd
    walk of length 2d+1; the minimum over roots is attained on a shortest odd
    cycle.
    """
    best = INFINITY
    adj = g.adj
    for s in range(g.n):
        dist = {s: 0}
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    q.append(w)
                elif dist[w] == dist[u]:
                    best = min(best, 2 * dist[u] + 1)
    return best


def is_bipartite(g: Graph) -> bool:
    return odd_girth(g) == INFINITY


# --- tree-depth -----------------------------------------------------------

def tree_depth(g: Graph, cap: int | None = TD_CAP) -> int:
    """Exact tree-depth: 1 + min over deletions for connected graphs, max over
    components otherwise (memoised on vertex subsets)."""
    if cap is not None and g.n > cap:
        raise CapacityError(f"tree_depth capped at {cap} vertices, got {g.n}")
    if g.n > 64:
        raise CapacityError("tree_depth works on at most 64 vertices")
    return kernel.td_mask(g.adj_masks, (1 << g.n) - 1)


def td_table(g: Graph) -> list[int]:
    """Tree-depth of every induced subgraph, indexed by vertex bitmask."""
    if g.n > 20:
        raise CapacityError("td_table limited to 20 vertices")
    return kernel.td_table(g.adj_masks)


# --- shallow topological minors --------------------------------------------

@dataclass(frozen=True)
class DepthParam:
    """Depth ``p`` stored as ``s = floor(2p)``: at most ``s`` subdivision vertices per edge."""

    s: int

    def __post_init__(self):
        if self.s < 0:
            raise ArgumentError("depth must be non-negative")

    @classmethod
    def from_depth(cls, p) -> "DepthParam":
        return cls(math.floor(2 * Fraction(p)))


def _as_s(d) -> int:
    return d.s if isinstance(d, DepthParam) else int(d)


def _short_paths(g: Graph, u: int, v: int, max_len: int, forbidden: frozenset):
    """All u-v paths of length <= max_len avoiding ``forbidden`` internally; yields internal vertex tuples."""
    out = []
    adj = g.adj

    def walk(x, inner, seen):
        if len(inner) + 1 > max_len:
            return
        for w in sorted(adj[x]):
            if w == v:
                out.append(tuple(inner))
            elif w not in seen and w not in forbidden:
                seen.add(w)
                inner.append(w)
                walk(w, inner, seen)
                inner.pop()
                seen.discard(w)

    walk(u, [], {u})
    return out


def maximal_minor_models(g: Graph, d, max_order: int):
    """Yield ``(branch_set, edge_set)`` for every branch set of size <= max_order
    and every inclusion-maximal set of branch pairs that can be joined by
    internally disjoint paths with at most ``s`` internal vertices each."""
    s = _as_s(d)
    for k in range(1, min(max_order, g.n) + 1):
        for branch in combinations(range(g.n), k):
            bset = frozenset(branch)
            direct = [(a, b) for a, b in combinations(branch, 2) if g.has_edge(a, b)]
            routed = []
            for a, b in combinations(branch, 2):
                if g.has_edge(a, b) or s == 0:
                    continue
                paths = [p for p in _short_paths(g, a, b, s + 1, bset) if p]
                if paths:
                    routed.append(((a, b), paths))
            found = set()

            def choose(i, used, chosen):
                if i == len(routed):
                    found.add(frozenset(chosen))
                    return
                pair, paths = routed[i]
                for p in paths:
                    if used.isdisjoint(p):
                        chosen.append(pair)
                        choose(i + 1, used | frozenset(p), chosen)
                        chosen.pop()
                choose(i + 1, used, chosen)

            choose(0, frozenset(), [])
            maximal = [e for e in found if not any(e < f for f in found)]
            for extra in sorted(maximal, key=sorted):
                yield branch, tuple(sorted(direct + list(extra)))


def _model_graph(branch, edges) -> Graph:
    pos = {x: i for i, x in enumerate(branch)}
    return Graph(len(branch), [(pos[a], pos[b]) for a, b in edges])


def shallow_top_minors(g: Graph, d, max_order: int, cfg: HomSearchConfig | None = None) -> list[Graph]:
    """All graphs on <= max_order vertices (one per isomorphism class) having a
    <= s-subdivision as a subgraph of ``g``."""
    from .generators import all_graphs

    if max_order > MINOR_CAP:
        raise CapacityError(f"shallow_top_minors capped at order {MINOR_CAP}")
    models = {}
    from .canonical import canonical_code

    for branch, edges in maximal_minor_models(g, d, max_order):
        h = _model_graph(branch, edges)
        models.setdefault(canonical_code(h, cap=None), h)
    hosts = list(models.values())
    out = []
    for h in all_graphs(min(max_order, g.n)):
        if any(h.n <= m.n and len(h.edges) <= len(m.edges) and is_subgraph(h, m, cfg) for m in hosts):
            out.append(h)
    return out


def grade(g: Graph, d, measure: str, max_order: int | None = None, cfg: HomSearchConfig | None = None):
    """Max of ``measure`` over the shallow topological minors of ``g`` at depth ``d``.

    ``measure`` is ``omega``, ``chi`` (integers) or ``avg_degree`` (a
    :class:`~fractions.Fraction`). All three are monotone under edge deletion,
    so the maximum is attained on a maximal model.
    """
    if measure not in ("omega", "chi", "avg_degree"):
        raise ArgumentError("measure must be omega, chi or avg_degree")
    if max_order is None:
        max_order = g.n
    best = Fraction(0) if measure == "avg_degree" else 0
    for branch, edges in maximal_minor_models(g, d, max_order):
        if measure == "avg_degree":
            val = Fraction(2 * len(edges), len(branch))
        else:
            h = _model_graph(branch, edges)
            val = clique_number(h, cfg, cap=None) if measure == "omega" else chromatic_number(h, cfg, cap=None)
        if val > best:
            best = val
    return best


# --- low tree-depth colourings ----------------------------------------------

@dataclass(frozen=True)
class TdColoring:
    t: int
    colors: tuple[int, ...]

    @property
    def color_count(self) -> int:
        return len(set(self.colors))

    def classes(self) -> list[int]:
        """Bitmask of each colour class, indexed by colour id."""
        masks = [0] * (max(self.colors, default=-1) + 1)
        for v, c in enumerate(self.colors):
            masks[c] |= 1 << v
        return masks

    def violation(self, g: Graph):
        """Return a colour subset whose union exceeds its tree-depth allowance, or None."""
        if len(self.colors) != g.n:
            return ()
        classes = self.classes()
        used = [c for c, m in enumerate(classes) if m]
        adj = g.adj_masks
        memo = {}
        for k in range(1, min(self.t, len(used)) + 1):
            for subset in combinations(used, k):
                mask = 0
                for c in subset:
                    mask |= classes[c]
                if kernel.td_mask(adj, mask, memo) > k:
                    return subset
        return None

    def is_valid(self, g: Graph) -> bool:
        return self.violation(g) is None


def _colour_search(g: Graph, t: int, n_colors: int, td):
    """Backtracking for a colouring with ``n_colors`` colours; ``td`` is the subset table."""
    n = g.n
    order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    colors = [-1] * n
    classes = [0] * n_colors

    def ok(c, used_count):
        others = [x for x in range(used_count) if x != c]
        for k in range(0, min(t, used_count) ):
            for rest in combinations(others, k):
                mask = classes[c]
                for x in rest:
                    mask |= classes[x]
                if td[mask] > k + 1:
                    return False
        return True

    def rec(i, used_count):
        if i == n:
            return True
        v = order[i]
        for c in range(min(used_count + 1, n_colors)):
            classes[c] |= 1 << v
            new_used = max(used_count, c + 1)
            if ok(c, new_used):
                colors[v] = c
                if rec(i + 1, new_used):
                    return True
            classes[c] &= ~(1 << v)
        colors[v] = -1
        return False

    return tuple(colors) if rec(0, 0) else None


def chi_t_exact(g: Graph, t: int) -> int:
    return _exact_coloring(g, t).color_count


def _exact_coloring(g: Graph, t: int) -> TdColoring:
    if t < 1:
        raise ArgumentError("t must be at least 1")
    if g.n > CHI_T_CAP or t > CHI_T_MAX_T:
        raise CapacityError(f"chi_t_exact limited to {CHI_T_CAP} vertices and t <= {CHI_T_MAX_T}")
    if g.n == 0:
        return TdColoring(t, ())
    td = td_table(g)
    for n_colors in range(1, g.n + 1):
        colors = _colour_search(g, t, n_colors, td)
        if colors is not None:
            return TdColoring(t, colors)
    raise ConstructionError("no low tree-depth colouring found (unreachable)")


def _degeneracy_order(g: Graph) -> list[int]:
    deg = {v: g.degree(v) for v in range(g.n)}
    alive = set(range(g.n))
    removed = []
    while alive:
        v = min(alive, key=lambda x: (deg[x], x))
        removed.append(v)
        alive.discard(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
    return removed[::-1]


def greedy_td_coloring(g: Graph, t: int) -> TdColoring:
    """Degeneracy-order greedy: smallest colour keeping every affected union within bound.

    A fresh colour always works (one extra vertex raises tree-depth by at
    most one), so this never fails; it may use more colours than necessary.
    """
    if g.n > GREEDY_TD_CAP:
        raise CapacityError(f"greedy low tree-depth colouring limited to {GREEDY_TD_CAP} vertices")
    adj = g.adj_masks
    memo = {}
    colors = [-1] * g.n
    classes = []
    for v in _degeneracy_order(g):
        bit = 1 << v
        for c in range(len(classes) + 1):
            if c == len(classes):
                classes.append(0)
            trial = classes[c] | bit
            others = [x for x in range(len(classes)) if x != c]
            good = True
            for k in range(0, min(t, len(classes))):
                for rest in combinations(others, k):
                    mask = trial
                    for x in rest:
                        mask |= classes[x]
                    if kernel.td_mask(adj, mask, memo) > k + 1:
                        good = False
                        break
                if not good:
                    break
            if good:
                classes[c] = trial
                colors[v] = c
                break
            if classes[c] == 0:
                classes.pop()
    return TdColoring(t, tuple(colors))


def low_td_coloring(g: Graph, t: int) -> TdColoring:
    """A validated low tree-depth colouring: optimal within exhaustive caps, greedy beyond."""
    if t < 1:
        raise ArgumentError("t must be at least 1")
    if g.n <= CHI_T_CAP and t <= CHI_T_MAX_T:
        col = _exact_coloring(g, t)
    else:
        col = greedy_td_coloring(g, t)
    if not col.is_valid(g):
        raise ConstructionError(f"low tree-depth colouring failed validation: {col}")
    return col


# --- Dvořák threshold --------------------------------------------------------

def dvorak_threshold(c: int) -> float:
    """Minimum-degree threshold forcing a 1-subdivided c-chromatic subgraph:
    56 (c-1)^2 log(c-1) / (log c - log(c-1))."""
    if c < 4:
        raise ArgumentError("threshold defined for c >= 4")
    return 56 * (c - 1) ** 2 * math.log(c - 1) / (math.log(c) - math.log(c - 1))
