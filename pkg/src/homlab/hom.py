"""Homomorphism search, counting, cores and hom-derived invariants."""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from typing import Iterable

from ._kernels import compiled_kernel, kernel, python_kernel
from .errors import ArgumentError, BudgetExceeded, CapacityError, ConstructionError
from .named import complete
from .ops import induced_substructure
from .structures import Graph, Homomorphism, Structure, check_same_signature

DEFAULT_BUDGET = 10_000_000
CORE_CAP = 9
CHROMATIC_CAP = 12


def default_budget() -> int:
    raw = os.environ.get("HOMLAB_BUDGET")
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise ArgumentError(f"HOMLAB_BUDGET must be an integer, got {raw!r}") from None
        if value <= 0:
            raise ArgumentError("HOMLAB_BUDGET must be positive")
        return value
    return DEFAULT_BUDGET


@dataclass(frozen=True)
class HomSearchConfig:
    node_budget: int = field(default_factory=default_budget)
    enumerate_all: bool = False
    propagation: str = "ac"
    backend: str | None = None  # None = best available, or "python" / "cython"

    def __post_init__(self):
        if self.node_budget <= 0:
            raise ArgumentError("node_budget must be positive")
        if self.propagation not in ("ac", "none"):
            raise ArgumentError("propagation must be 'ac' or 'none'")
        if self.backend not in (None, "python", "cython"):
            raise ArgumentError("backend must be None, 'python' or 'cython'")


class _Problem:
    """(A, B) compiled into bitmask domains, pairwise arc tables and hyper tuples."""

    def __init__(self, a: Structure, b: Structure, restrict=None):
        check_same_signature(a, b)
        m = b.n
        full = (1 << m) - 1
        dom = [full] * a.n
        if restrict is not None:
            for v, mask in enumerate(restrict):
                dom[v] &= mask
        pair = {}
        hypers = []
        for (_, arity), ra, rb in zip(a.sig.symbols, a.relations, b.relations):
            if not ra:
                continue
            if arity == 1:
                mask = 0
                for (x,) in rb:
                    mask |= 1 << x
                for (u,) in ra:
                    dom[u] &= mask
            elif arity == 2:
                fwd = [0] * m
                bwd = [0] * m
                loops = 0
                for x, y in rb:
                    fwd[x] |= 1 << y
                    bwd[y] |= 1 << x
                    if x == y:
                        loops |= 1 << x
                for u, v in ra:
                    if u == v:
                        dom[u] &= loops
                        continue
                    _and_into(pair, (u, v), fwd)
                    _and_into(pair, (v, u), bwd)
            else:
                projections = [0] * arity
                for t in rb:
                    for i, x in enumerate(t):
                        projections[i] |= 1 << x
                for t in ra:
                    for i, x in enumerate(t):
                        dom[x] &= projections[i]
                    hypers.append((t, rb))
        tables = []
        table_id = {}
        by_src = [[] for _ in range(a.n)]
        for (u, v), tab in sorted(pair.items()):
            key = tuple(tab)
            tid = table_id.get(key)
            if tid is None:
                tid = table_id[key] = len(tables)
                tables.append(list(key))
            by_src[u].append((v, tid))
        arc_ptr = [0]
        arc_dst = []
        arc_tab = []
        for lst in by_src:
            for v, tid in lst:
                arc_dst.append(v)
                arc_tab.append(tid)
            arc_ptr.append(len(arc_dst))
        self.a, self.b = a, b
        self.domains = dom
        self.arc_ptr, self.arc_dst, self.arc_tab, self.tables = arc_ptr, arc_dst, arc_tab, tables
        self.hypers = hypers

    def solve(self, cfg: HomSearchConfig, limit=0, collect=True, injective=False, proj=None):
        k = self._pick_kernel(cfg)
        count, sols, nodes, exhausted = k.solve(
            self.a.n, self.b.n, self.domains, self.arc_ptr, self.arc_dst, self.arc_tab,
            self.tables, limit=limit, collect=collect, budget=cfg.node_budget,
            propagate=1 if cfg.propagation == "ac" else 0, injective=injective, proj=proj,
            hypers=self.hypers or None,
        )
        if exhausted:
            raise BudgetExceeded(f"search exhausted {cfg.node_budget} nodes", nodes=nodes)
        return count, sols

    def _pick_kernel(self, cfg):
        needs_python = bool(self.hypers) or self.b.n > 64
        if cfg.backend == "python" or needs_python:
            if cfg.backend == "cython" and needs_python:
                raise ArgumentError("compiled kernel cannot handle this instance")
            return python_kernel
        if cfg.backend == "cython":
            if compiled_kernel is None:
                raise ArgumentError("compiled kernel is not available")
            return compiled_kernel
        return kernel


def _and_into(pair, key, tab):
    cur = pair.get(key)
    if cur is None:
        pair[key] = list(tab)
    else:
        for i, x in enumerate(tab):
            cur[i] &= x


def _witness(a, b, mapping) -> Homomorphism:
    h = Homomorphism(a, b, mapping)
    if not h.is_valid():
        raise ConstructionError(f"search produced an invalid homomorphism {mapping}")
    return h


def hom_exists(a: Structure, b: Structure, cfg: HomSearchConfig | None = None) -> Homomorphism | None:
    """Return a validated witness ``a -> b``, or ``None`` when none exists.

    Raises :class:`BudgetExceeded` when the node budget runs out first.
    """
    cfg = cfg or HomSearchConfig()
    _, sols = _Problem(a, b).solve(cfg, limit=1)
    return _witness(a, b, sols[0]) if sols else None


def maps_to(a: Structure, b: Structure, cfg: HomSearchConfig | None = None) -> bool:
    return hom_exists(a, b, cfg) is not None


def hom_count(a: Structure, b: Structure, cfg: HomSearchConfig | None = None) -> int:
    cfg = cfg or HomSearchConfig()
    count, _ = _Problem(a, b).solve(cfg, collect=False)
    return count


def enumerate_homomorphisms(a: Structure, b: Structure, cfg: HomSearchConfig | None = None,
                            limit: int = 0) -> list[Homomorphism]:
    cfg = cfg or HomSearchConfig(enumerate_all=True)
    _, sols = _Problem(a, b).solve(cfg, limit=limit)
    return [_witness(a, b, s) for s in sols]


def hom_projections(a: Structure, b: Structure, vertices: Iterable[int],
                    cfg: HomSearchConfig | None = None) -> list[Homomorphism]:
    """One witness per distinct restriction of a homomorphism to ``vertices``."""
    cfg = cfg or HomSearchConfig(enumerate_all=True)
    proj = sorted(set(vertices))
    if any(not 0 <= v < a.n for v in proj):
        raise ArgumentError("projection vertex out of range")
    _, sols = _Problem(a, b).solve(cfg, proj=proj)
    return [_witness(a, b, s) for s in sols]


def embedding(a: Structure, b: Structure, cfg: HomSearchConfig | None = None) -> Homomorphism | None:
    """An injective homomorphism ``a -> b`` (for graphs: ``a`` is a subgraph of ``b``)."""
    cfg = cfg or HomSearchConfig()
    if a.n > b.n:
        return None
    _, sols = _Problem(a, b).solve(cfg, limit=1, injective=True)
    return _witness(a, b, sols[0]) if sols else None


def is_subgraph(a: Structure, b: Structure, cfg: HomSearchConfig | None = None) -> bool:
    return embedding(a, b, cfg) is not None


@dataclass(frozen=True)
class CoreResult:
    """``core`` is the substructure induced on ``image``; ``retraction`` is an
    endomorphism of the input onto ``image`` fixing it pointwise."""

    core: Structure
    retraction: Homomorphism
    image: tuple[int, ...]

    @property
    def to_core(self) -> Homomorphism:
        pos = {x: i for i, x in enumerate(self.image)}
        return Homomorphism(self.retraction.source, self.core, tuple(pos[x] for x in self.retraction.map))


def _shrinking_endomorphism(s: Structure, cfg: HomSearchConfig):
    full = (1 << s.n) - 1
    for v in range(s.n):
        restrict = [full & ~(1 << v)] * s.n
        _, sols = _Problem(s, s, restrict=restrict).solve(cfg, limit=1)
        if sols:
            return sols[0]
    return None


def core(a: Structure, cfg: HomSearchConfig | None = None, cap: int | None = CORE_CAP) -> CoreResult:
    """Retract repeatedly along non-surjective endomorphisms until none remains.

    Vertices are tried in increasing order and the first shrinking
    endomorphism found is used; the resulting core is unique up to
    isomorphism regardless of these choices.
    """
    cfg = cfg or HomSearchConfig()
    if cap is not None and a.n > cap:
        raise CapacityError(f"core computation capped at {cap} vertices, got {a.n}")
    current = list(range(a.n))
    r = list(range(a.n))
    while True:
        sub = induced_substructure(a, current)
        h = _shrinking_endomorphism(sub, cfg)
        if h is None:
            break
        pos = {x: i for i, x in enumerate(current)}
        r = [current[h[pos[r[x]]]] for x in range(a.n)]
        current = [current[i] for i in sorted(set(h))]
    # r restricted to the core is an automorphism of it: undo it to fix the core pointwise
    inv = {r[x]: x for x in current}
    r = tuple(inv[r[x]] for x in range(a.n))
    retraction = _witness(a, a, r)
    return CoreResult(induced_substructure(a, current), retraction, tuple(current))


def is_core(a: Structure, cfg: HomSearchConfig | None = None) -> bool:
    """True iff every endomorphism is surjective (hence an automorphism)."""
    cfg = cfg or HomSearchConfig()
    return _shrinking_endomorphism(a, cfg) is None


def hom_equivalent(a: Structure, b: Structure, cfg: HomSearchConfig | None = None) -> bool:
    return maps_to(a, b, cfg) and maps_to(b, a, cfg)


def chromatic_number(g: Graph, cfg: HomSearchConfig | None = None, cap: int | None = CHROMATIC_CAP) -> int:
    """Least k with ``g -> K_k`` (0 for the empty graph)."""
    if cap is not None and g.n > cap:
        raise CapacityError(f"chromatic_number capped at {cap} vertices, got {g.n}")
    if g.n == 0:
        return 0
    if not g.edges:
        return 1
    k = 2
    while not maps_to(g, complete(k), cfg):
        k += 1
    return k


def clique_number(g: Graph, cfg: HomSearchConfig | None = None, cap: int | None = CHROMATIC_CAP) -> int:
    """Largest k with ``K_k -> g``; equals the largest clique since cliques are cores."""
    if cap is not None and g.n > cap:
        raise CapacityError(f"clique_number capped at {cap} vertices, got {g.n}")
    if g.n == 0:
        return 0
    k = 1
    while k < g.n and maps_to(complete(k + 1), g, cfg):
        k += 1
    return k


def is_proper_coloring(g: Graph, colors) -> bool:
    return all(colors[u] != colors[v] for u, v in g.edges)
