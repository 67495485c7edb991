"""Small named graphs and digraphs."""

from __future__ import annotations

import re
from itertools import combinations

from .errors import ArgumentError
from .structures import Digraph, Graph


def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def edgeless(n: int) -> Graph:
    return Graph(n)


def cycle(n: int) -> Graph:
    if n < 3:
        raise ArgumentError("cycles need at least 3 vertices")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    """Path on ``n`` vertices."""
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def directed_path(n: int) -> Digraph:
    """Directed path on ``n`` vertices (``n - 1`` arcs)."""
    return Digraph(n, [(i, i + 1) for i in range(n - 1)])


def transitive_tournament(k: int) -> Digraph:
    return Digraph(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def directed_cycle(n: int) -> Digraph:
    return Digraph(n, [(i, (i + 1) % n) for i in range(n)])


_PATTERNS = [
    (re.compile(r"k(\d+)_(\d+)"), lambda m: complete_bipartite(int(m[1]), int(m[2]))),
    (re.compile(r"k(\d+)"), lambda m: complete(int(m[1]))),
    (re.compile(r"c(\d+)"), lambda m: cycle(int(m[1]))),
    (re.compile(r"p(\d+)"), lambda m: path(int(m[1]))),
    (re.compile(r"e(\d+)"), lambda m: edgeless(int(m[1]))),
    (re.compile(r"s(\d+)"), lambda m: star(int(m[1]))),
    (re.compile(r"dp(\d+)"), lambda m: directed_path(int(m[1]))),
    (re.compile(r"dc(\d+)"), lambda m: directed_cycle(int(m[1]))),
    (re.compile(r"t(\d+)"), lambda m: transitive_tournament(int(m[1]))),
    (re.compile(r"petersen"), lambda m: petersen()),
]

NAME_HELP = (
    "K<n> complete, K<a>_<b> complete bipartite, C<n> cycle, P<n> path on n vertices, "
    "E<n> edgeless, S<n> star with n leaves, petersen, DP<n> directed path on n vertices, "
    "DC<n> directed cycle, T<n> transitive tournament"
)


def by_name(name: str) -> Graph | Digraph:
    key = name.strip().lower()
    for pattern, build in _PATTERNS:
        m = pattern.fullmatch(key)
        if m:
            return build(m)
    raise ArgumentError(f"unknown graph name {name!r} (known: {NAME_HELP})")
