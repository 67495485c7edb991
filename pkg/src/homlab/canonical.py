"""Canonical codes for small structures.

Ordered-partition refinement (colour refinement over relation incidences)
plus individualisation with backtracking. Two pruning rules keep the
search small at desk scale:

* a node whose partition is *cell-homogeneous* (every permutation inside
  cells is an automorphism) has a single representative leaf;
* automorphisms discovered from equal leaf codes prune sibling branches
  lying in the same orbit of the pointwise stabiliser of the current
  individualised prefix.
"""

from __future__ import annotations

from collections import Counter
from math import prod

from .errors import CapacityError
from .structures import Structure

DEFAULT_CAP = 10


def canonical_code(a: Structure, cap: int | None = DEFAULT_CAP) -> bytes:
    """Return a byte string equal for two structures iff they are isomorphic."""
    return canonical_form(a, cap)[0]


def canonical_form(a: Structure, cap: int | None = DEFAULT_CAP) -> tuple[bytes, tuple[int, ...]]:
    """Return ``(code, labeling)`` where ``labeling[v]`` is v's canonical position."""
    if cap is not None and a.n > cap:
        raise CapacityError(f"canonical_code capped at {cap} vertices, got {a.n}")
    return _Canonizer(a).run()


def _encode(a: Structure, lab) -> bytes:
    parts = [str(a.n)]
    for ts in a.relations:
        relabeled = sorted(tuple(lab[x] for x in t) for t in ts)
        parts.append(";".join(",".join(map(str, t)) for t in relabeled))
    header = "|".join(f"{name}/{ar}" for name, ar in a.sig.symbols)
    return (header + "#" + "|".join(parts)).encode()


class _Canonizer:
    def __init__(self, a: Structure):
        self.a = a
        self.n = a.n
        # occurrences[v] = list of (symbol index, position, tuple)
        occ = [[] for _ in range(a.n)]
        for si, ts in enumerate(a.relations):
            for t in ts:
                for pos, x in enumerate(t):
                    occ[x].append((si, pos, t))
        self.occ = occ
        self.best_code = None
        self.best_lab = None
        self.seen = {}
        self.autos = []

    # --- partitions are lists of colour ranks, one per vertex -------------
    def _refine(self, colors):
        n = self.n
        while True:
            sigs = []
            for v in range(n):
                inc = sorted(
                    (si, pos, tuple(colors[x] if x != v else -1 for x in t))
                    for si, pos, t in self.occ[v]
                )
                sigs.append((colors[v], tuple(inc)))
            ranks = {s: i for i, s in enumerate(sorted(set(sigs)))}
            new = [ranks[s] for s in sigs]
            if len(ranks) == len(set(colors)):
                return new
            colors = new

    def _homogeneous(self, colors) -> bool:
        sizes = Counter(colors)
        for ts in self.a.relations:
            if not ts:
                continue
            patterns = Counter()
            for t in ts:
                first = {}
                eq = tuple(first.setdefault(x, len(first)) for x in t)
                patterns[(tuple(colors[x] for x in t), eq)] += 1
            for (cols, eq), count in patterns.items():
                per_cell = Counter()
                seen = set()
                for c, e in zip(cols, eq):
                    if e not in seen:
                        seen.add(e)
                        per_cell[c] += 1
                total = prod(_falling(sizes[c], k) for c, k in per_cell.items())
                if count != total:
                    return False
        return True

    def run(self):
        if self.n == 0:
            return _encode(self.a, []), ()
        colors = self._refine([0] * self.n)
        self._search(colors, [])
        return self.best_code, tuple(self.best_lab)

    def _leaf(self, colors):
        # colors is discrete or homogeneous: break ties by vertex id
        order = sorted(range(self.n), key=lambda v: (colors[v], v))
        lab = [0] * self.n
        for pos, v in enumerate(order):
            lab[v] = pos
        code = _encode(self.a, lab)
        other = self.seen.get(code)
        if other is not None:
            inv = [0] * self.n
            for v, p in enumerate(other):
                inv[p] = v
            auto = tuple(inv[lab[v]] for v in range(self.n))
            if any(auto[v] != v for v in range(self.n)):
                self.autos.append(auto)
        else:
            self.seen[code] = lab
        if self.best_code is None or code < self.best_code:
            self.best_code, self.best_lab = code, lab

    def _search(self, colors, prefix):
        counts = Counter(colors)
        if len(counts) == self.n or self._homogeneous(colors):
            self._leaf(colors)
            return
        target = min(c for c, k in counts.items() if k > 1)
        cell = [v for v in range(self.n) if colors[v] == target]
        explored = []
        for v in cell:
            if explored and self._same_orbit(v, explored, prefix):
                continue
            explored.append(v)
            # individualise v: it goes in front of the rest of its cell
            new = [2 * c + (1 if c == target and x != v else 0) for x, c in enumerate(colors)]
            self._search(self._refine(new), prefix + [v])

    def _same_orbit(self, v, explored, prefix):
        gens = [g for g in self.autos if all(g[p] == p for p in prefix)]
        if not gens:
            return False
        orbit = {v}
        frontier = [v]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = g[x]
                if y not in orbit:
                    orbit.add(y)
                    frontier.append(y)
        return any(e in orbit for e in explored)


def _falling(n, k):
    out = 1
    for i in range(k):
        out *= n - i
    return out


def are_isomorphic(a: Structure, b: Structure, cap: int | None = DEFAULT_CAP) -> bool:
    if a.sig != b.sig or a.n != b.n or a.num_tuples() != b.num_tuples():
        return False
    return canonical_code(a, cap) == canonical_code(b, cap)
