"""Class samples: isomorphism-free enumeration, subdivision closures,
bounded tree-depth families and randomised high-girth search."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, product

from .canonical import canonical_code
from .errors import ArgumentError, CapacityError
from .hom import HomSearchConfig, chromatic_number
from .named import by_name, cycle
from .ops import subdivide_general
from .samples import ClassSample
from .structures import Digraph, Graph, Signature, Structure

GRAPH_ORDER_CAP = 7
DIGRAPH_ORDER_CAP = 4
RHG_ORDER_CAP = 40
KINDS = ("all_graphs", "all_digraphs", "subdivision_closure", "bounded_treedepth", "random_high_girth")
_ALIASES = {"subdiv": "subdivision_closure", "treedepth": "bounded_treedepth", "td": "bounded_treedepth",
            "rhg": "random_high_girth", "graphs": "all_graphs", "digraphs": "all_digraphs"}


# --- exhaustive enumeration ----------------------------------------------------

def _canonical_sorted(items):
    seen = {}
    for g in items:
        seen.setdefault(canonical_code(g, cap=None), g)
    return tuple(seen[c] for c in sorted(seen, key=lambda c: (seen[c].num_tuples(), c)))


@lru_cache(maxsize=None)
def graphs_of_order(n: int) -> tuple[Graph, ...]:
    """One graph per isomorphism class on exactly ``n`` vertices.

    Built by vertex augmentation: every graph on n vertices is some graph on
    n-1 vertices plus a vertex joined to a subset.
    """
    if n > GRAPH_ORDER_CAP:
        raise CapacityError(f"graph enumeration capped at order {GRAPH_ORDER_CAP}")
    if n <= 0:
        return (Graph(0),) if n == 0 else ()
    if n == 1:
        return (Graph(1),)
    out = []
    for h in graphs_of_order(n - 1):
        for k in range(n):
            for nbrs in combinations(range(n - 1), k):
                out.append(Graph(n, list(h.edges) + [(v, n - 1) for v in nbrs]))
    return _canonical_sorted(out)


def all_graphs(max_order: int, min_order: int = 1) -> list[Graph]:
    return [g for n in range(min_order, max_order + 1) for g in graphs_of_order(n)]


@lru_cache(maxsize=None)
def digraphs_of_order(n: int) -> tuple[Digraph, ...]:
    if n > DIGRAPH_ORDER_CAP:
        raise CapacityError(f"digraph enumeration capped at order {DIGRAPH_ORDER_CAP}")
    if n <= 0:
        return (Digraph(0),) if n == 0 else ()
    if n == 1:
        return (Digraph(1),)
    out = []
    new = n - 1
    for h in digraphs_of_order(n - 1):
        for choice in product(range(4), repeat=n - 1):
            arcs = list(h.arcs)
            for v, c in enumerate(choice):
                if c & 1:
                    arcs.append((v, new))
                if c & 2:
                    arcs.append((new, v))
            out.append(Digraph(n, arcs))
    return _canonical_sorted(out)


def all_digraphs(max_order: int, min_order: int = 1) -> list[Digraph]:
    return [g for n in range(min_order, max_order + 1) for g in digraphs_of_order(n)]


def structures_of_order(sig: Signature, n: int, tuple_cap: int = 3) -> tuple[Structure, ...]:
    """All structures of ``sig`` on n elements with at most ``tuple_cap`` tuples per relation."""
    pools = [list(product(range(n), repeat=arity)) for _, arity in sig.symbols]
    if sum(len(p) for p in pools) > 64:
        raise CapacityError("structure enumeration too large; lower the order or the signature")
    choices = []
    for pool in pools:
        opts = []
        for k in range(min(tuple_cap, len(pool)) + 1):
            opts.extend(combinations(pool, k))
        choices.append(opts)
    return _canonical_sorted(Structure(sig, n, list(rels)) for rels in product(*choices))


# --- specs ----------------------------------------------------------------------

@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    max_order: int
    params: dict = field(default_factory=dict, hash=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ArgumentError(f"unknown generator kind {self.kind!r}")
        if self.max_order < 1:
            raise ArgumentError("max_order must be positive")
        caps = {"all_graphs": GRAPH_ORDER_CAP, "bounded_treedepth": GRAPH_ORDER_CAP,
                "all_digraphs": DIGRAPH_ORDER_CAP, "random_high_girth": RHG_ORDER_CAP}
        cap = caps.get(self.kind)
        if cap is not None and self.max_order > cap:
            raise CapacityError(f"{self.kind} capped at order {cap}")
        if self.kind == "random_high_girth" and "seed" not in self.params:
            raise ArgumentError("random_high_girth needs an explicit seed")

    @classmethod
    def parse(cls, text: str) -> "GeneratorSpec":
        """Parse ``kind:key=value,...`` (e.g. ``subdiv:base=K3,q=2,max=9``)."""
        kind, _, rest = text.strip().partition(":")
        kind = _ALIASES.get(kind, kind)
        params = {}
        for item in filter(None, (x.strip() for x in rest.split(","))):
            key, eq, value = item.partition("=")
            if not eq:
                raise ArgumentError(f"bad generator parameter {item!r}")
            params[key.strip()] = value.strip()
        if kind == "random_high_girth":
            max_order = int(params.pop("n", params.pop("max", 0)))
        else:
            if "max" not in params:
                raise ArgumentError("generator spec needs max=<order>")
            max_order = int(params.pop("max"))
        typed = {}
        for key, value in params.items():
            if key == "base":
                typed[key] = tuple(value.split("+"))
            elif key == "c":
                typed[key] = float(value)
            else:
                try:
                    typed[key] = int(value)
                except ValueError:
                    raise ArgumentError(f"parameter {key} must be an integer") from None
        return cls(kind, max_order, typed)


def enumerate_sample(spec: GeneratorSpec, cfg: HomSearchConfig | None = None) -> ClassSample:
    """Deterministic isomorphism-free sample for ``spec``."""
    k, m, p = spec.kind, spec.max_order, spec.params
    if k == "all_graphs":
        return ClassSample(tuple(all_graphs(m)), frozenset({"hereditary", "addable", "monotone"}),
                           f"graphs<={m}")
    if k == "all_digraphs":
        return ClassSample(tuple(all_digraphs(m)), frozenset({"hereditary", "addable", "monotone"}),
                           f"digraphs<={m}")
    if k == "bounded_treedepth":
        from .sparsity import tree_depth

        d = int(p.get("td", 2))
        members = tuple(g for g in all_graphs(m) if tree_depth(g) <= d)
        return ClassSample(members, frozenset({"hereditary", "addable", "monotone"}), f"graphs<={m},td<={d}")
    if k == "subdivision_closure":
        bases = [by_name(b) if isinstance(b, str) else b for b in p.get("base", ("K3",))]
        q = int(p.get("q", 1))
        sample, _ = subdivision_closure(bases, q, m)
        return sample
    if k == "random_high_girth":
        n, g = m, int(p.get("g", 3))
        trials, seed, c = int(p.get("trials", 10)), int(p["seed"]), float(p.get("c", 3.0))
        outs = [_rhg_trial(n, g, seed, i, c) for i in range(trials)]
        return ClassSample.build(outs, (), f"rhg(n={n},g={g},trials={trials},seed={seed})")
    raise ArgumentError(f"unknown kind {k}")


def subdivision_closure(bases, q: int, max_order: int):
    """All <= q-subdivisions of the base graphs with at most ``max_order`` vertices.

    Returns ``(sample, certificates)`` with one ``(member, base, lengths)``
    certificate per member; ``lengths`` maps base edges to path lengths in 1..q+1.
    """
    if q < 0:
        raise ArgumentError("q must be non-negative")
    found = {}
    for base in bases:
        edges = base.edges
        for lens in product(range(1, q + 2), repeat=len(edges)):
            if base.n + sum(x - 1 for x in lens) > max_order:
                continue
            lengths = dict(zip(edges, lens))
            g = subdivide_general(base, lengths)
            found.setdefault(canonical_code(g, cap=None), (g, base, lengths))
    sample = ClassSample.build((v[0] for v in found.values()), {"topologically_closed"},
                               f"subdiv(q<={q})<={max_order}")
    by_code = {canonical_code(g, cap=None): (g, b, l) for g, b, l in found.values()}
    certs = [by_code[canonical_code(mem, cap=None)] for mem in sample.members]
    return sample, certs


# --- random high girth ---------------------------------------------------------

def _short_cycle_edge(g: Graph, limit: int):
    """Closing edge of the first cycle shorter than ``limit`` met by BFS from each root."""
    adj = g.adj
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = [s]
        for u in queue:
            for w in sorted(adj[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w and dist[u] + dist[w] + 1 < limit:
                    return (u, w)
    return None


def _rhg_trial(n: int, g: int, seed: int, trial: int, c: float) -> Graph:
    rng = random.Random(seed * 1_000_003 + trial)
    p = min(1.0, c / n)
    edges = {e for e in combinations(range(n), 2) if rng.random() < p}
    while True:
        h = Graph(n, edges)
        e = _short_cycle_edge(h, g)
        if e is None:
            return h
        edges.discard((min(e), max(e)))


def random_high_girth(n: int, g: int, trials: int, seed: int, c: float = 3.0,
                      cfg: HomSearchConfig | None = None) -> Graph | None:
    """Best-of-``trials`` Erdős-style sample: G(n, c/n) with one edge deleted per
    cycle shorter than ``g``; returns the first trial of maximum chromatic number."""
    if n > RHG_ORDER_CAP:
        raise CapacityError(f"random_high_girth capped at {RHG_ORDER_CAP} vertices")
    if n < 1 or g < 3 or trials < 0:
        raise ArgumentError("need n >= 1, g >= 3, trials >= 0")
    best, best_chi = None, -1
    for i in range(trials):
        h = _rhg_trial(n, g, seed, i, c)
        chi = chromatic_number(h, cfg, cap=None)
        if chi > best_chi:
            best, best_chi = h, chi
    return best


# --- odd-girth criterion ----------------------------------------------------------

def odd_girth_criterion_experiment(sample: ClassSample, g: int, t: int | None = None,
                                   cfg: HomSearchConfig | None = None):
    """Build ``H_g`` as the restricted dual of ``C_g`` over ``sample`` and check that every
    member of odd girth > g maps to it while ``C_g`` does not.

    Returns ``(verdict, H_g)``.
    """
    from .duality import Verdict, dual_construct
    from .hom import hom_exists
    from .sparsity import odd_girth

    if g < 3 or g % 2 == 0:
        raise ArgumentError("g must be an odd integer >= 3")
    if t is None:
        t = g + 1
    cg = cycle(g)
    h = dual_construct([cg], sample, t, cfg=cfg, check=False)
    scope = sample.description
    w = hom_exists(cg, h, cfg)
    if w is not None:
        return Verdict(False, counterexample=cg, witness=w, direction=f"C{g} -> H_g", scope=scope), h
    for member in sample:
        if odd_girth(member) > g and hom_exists(member, h, cfg) is None:
            return Verdict(False, counterexample=member, direction=f"odd_girth>{g} but G -/-> H_g",
                           scope=scope), h
    return Verdict(True, scope=scope), h
