"""Finite and restricted homomorphism dualities: verification, minimisation, construction."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from itertools import product as cartesian
from math import prod
from typing import Iterable, Sequence

from .canonical import canonical_code
from .errors import ArgumentError, ConstructionError, PreconditionError
from .hom import HomSearchConfig, core, hom_exists, is_core, maps_to
from .named import directed_path, transitive_tournament
from .ops import categorical_product, disjoint_union, disjoint_union_all, is_connected, pre_set
from .samples import ClassSample
from .structures import Graph, Structure, check_same_signature, same_kind
from .verdict import Verdict

BRUTE_FORCE_LIMIT = 200_000
PRODUCT_BUILD_CAP = 2_000


@dataclass(frozen=True)
class DualityInstance:
    family: tuple[Structure, ...]
    dual: Structure

    def __post_init__(self):
        object.__setattr__(self, "family", tuple(self.family))
        if not self.family:
            raise ArgumentError("a duality needs a non-empty family")
        for f in self.family:
            check_same_signature(f, self.dual)


def _brute_maps(a: Structure, b: Structure) -> bool:
    """Independent check of ``a -> b``: naive enumeration when small, else the
    propagation-free pure-Python search."""
    if b.n ** a.n <= BRUTE_FORCE_LIMIT:
        rels = list(zip(a.relations, b.relations))
        for f in cartesian(range(b.n), repeat=a.n):
            if all(tuple(f[x] for x in t) in rb for ra, rb in rels for t in ra):
                return True
        return False
    cfg = HomSearchConfig(propagation="none", backend="python")
    return hom_exists(a, b, cfg) is not None


def verify_duality(inst: DualityInstance, universe: ClassSample, cfg: HomSearchConfig | None = None) -> Verdict:
    """Check ``(some F -> G) <=> (G -/-> D)`` for every G in ``universe``.

    The first failure in canonical sample order is returned and re-checked
    by an independent search. ``details['family_to_dual']`` lists members that
    map to the dual (none for a genuine duality).
    """
    family, dual = inst.family, inst.dual
    scope = universe.description
    if universe.signature is not None:
        check_same_signature(family[0], universe.members[0])
    to_dual = [i for i, f in enumerate(family) if maps_to(f, dual, cfg)]
    details = {"family_to_dual": to_dual, "checked": 0}
    for g in universe:
        details["checked"] += 1
        hit = None
        for f in family:
            hit = hom_exists(f, g, cfg)
            if hit is not None:
                break
        into_dual = hom_exists(g, dual, cfg)
        if hit is not None and into_dual is not None:
            if not (_brute_maps(hit.source, g) and _brute_maps(g, dual)):
                raise ConstructionError("counterexample failed independent re-check")
            return Verdict(False, g, into_dual, "F -> G and G -> D", scope, details)
        if hit is None and into_dual is None:
            if any(_brute_maps(f, g) for f in family) or _brute_maps(g, dual):
                raise ConstructionError("counterexample failed independent re-check")
            return Verdict(False, g, None, "no F -> G but G -/-> D", scope, details)
    return Verdict(True, scope=scope, details=details)


def ghrv_instance(k: int) -> DualityInstance:
    """Directed path on k+1 vertices against the transitive tournament on k vertices."""
    if k < 1:
        raise ArgumentError("k must be at least 1")
    return DualityInstance((directed_path(k + 1),), transitive_tournament(k))


def _code(s: Structure) -> bytes:
    return canonical_code(s, cap=None)


def _dedup(family):
    seen = {}
    for f in family:
        seen.setdefault((f.n, _code(f)), f)
    return [seen[k] for k in sorted(seen)]


def minimize_family(inst: DualityInstance, universe: ClassSample,
                    cfg: HomSearchConfig | None = None) -> DualityInstance:
    """Reduce the family to a fixed point of three rules, each re-verified:
    replace members by their cores, drop redundant members, replace a member
    by its identification set Pre(F) (graphs only)."""
    if not verify_duality(inst, universe, cfg).holds:
        raise PreconditionError("the input duality does not verify over the sample")
    dual = inst.dual

    def ok(fam):
        return bool(fam) and verify_duality(DualityInstance(tuple(fam), dual), universe, cfg).holds

    family = _dedup(inst.family)
    changed = True
    while changed:
        changed = False
        cored = _dedup(core(f, cfg, cap=None).core for f in family)
        if [(_code(f)) for f in cored] != [(_code(f)) for f in family] and ok(cored):
            family = cored
            changed = True
        i = 0
        while i < len(family):
            trial = family[:i] + family[i + 1:]
            if ok(trial):
                family = trial
                changed = True
            else:
                i += 1
        for i, f in enumerate(family):
            if not isinstance(f, Graph) or f.n < 2:
                continue
            # merges of adjacent vertices carry a loop and can never map into a simple graph
            pres = [h for h in pre_set(f, keep_loops=True) if isinstance(h, Graph)]
            trial = _dedup(family[:i] + family[i + 1:] + pres)
            if ok(trial):
                family = trial
                changed = True
                break
    return DualityInstance(tuple(family), dual)


def _sample_lookup(universe: ClassSample):
    return {(m.n, _code(m)): m for m in universe}


def connectivity_check(inst: DualityInstance, universe: ClassSample,
                       cfg: HomSearchConfig | None = None) -> Verdict:
    """Consequences of minimality: over addable classes every member is connected;
    over monotone classes every member also lies in the class and misses the dual."""
    addable, monotone = universe.has("addable"), universe.has("monotone")
    if not (addable or monotone):
        raise PreconditionError("connectivity check needs an addable or monotone sample")
    scope = universe.description
    lookup = _sample_lookup(universe)
    dual = inst.dual
    for f in inst.family:
        if not is_connected(f):
            details = {}
            pair = _union_pair(f, inst, universe, lookup, cfg)
            if pair is not None:
                details["pair"] = pair
            return Verdict(False, f, None, "disconnected member", scope, details)
    if monotone:
        for f in inst.family:
            if f.n <= universe.max_order and (f.n, _code(f)) not in lookup:
                return Verdict(False, f, None, "member outside the class", scope)
            w = hom_exists(f, dual, cfg)
            if w is not None:
                return Verdict(False, f, w, "member maps to the dual", scope)
    return Verdict(True, scope=scope)


def _union_pair(f, inst, universe, lookup, cfg):
    """Members G1, G2 that both map to the dual while F maps to G1 + G2."""
    below = [g for g in universe if maps_to(g, inst.dual, cfg)]
    for i, g1 in enumerate(below):
        for g2 in below[i:]:
            u = same_kind(g1, disjoint_union(g1, g2))
            if maps_to(f, u, cfg):
                return g1, g2, (u.n, _code(u)) in lookup
    return None


def product_dual(duals: Sequence[Structure]) -> Structure:
    """Categorical product of the duals, in the given order."""
    if not duals:
        raise ArgumentError("need at least one dual")
    return reduce(lambda x, y: same_kind(duals[0], categorical_product(x, y)), duals)


def _approximation(a: Structure, t: int, cfg):
    from .approximation import theta_oracle
    from .generators import DIGRAPH_ORDER_CAP, GRAPH_ORDER_CAP

    c = core(a, cfg, cap=None).core
    cap = GRAPH_ORDER_CAP if isinstance(a, Graph) else DIGRAPH_ORDER_CAP
    if c.n <= cap:
        res = theta_oracle(c, t, c.n, cfg)
        if res is not None:
            return res.approx
    # the core is itself a t-approximation
    return c


def dual_construct(family: Iterable[Structure], universe: ClassSample, t: int,
                   cfg: HomSearchConfig | None = None, check: bool = True) -> Structure:
    """Disjoint union of t-approximations of every sample member that no family
    member maps into (the empty structure when there are none).

    Approximations are the exact oracle minima taken on cores; duplicates up
    to isomorphism or homomorphic equivalence are dropped.
    """
    family = tuple(family)
    if not family:
        raise ArgumentError("family must be non-empty")
    for f in family:
        if not is_connected(f) or f.n == 0:
            raise PreconditionError("family members must be non-empty and connected")
    if t < max(f.n for f in family):
        raise PreconditionError("t must be at least the largest family order")
    chosen = []
    for a in universe:
        if any(maps_to(f, a, cfg) for f in family):
            continue
        b = _approximation(a, t, cfg)
        if any(maps_to(b, c, cfg) and maps_to(c, b, cfg) for c in chosen):
            continue
        chosen.append(b)
    sig = family[0].sig
    d = same_kind(family[0], disjoint_union_all(chosen, sig))
    if check:
        for f in family:
            if maps_to(f, d, cfg):
                raise ConstructionError(f"family member maps to the constructed dual (t={t} too small?)")
        v = verify_duality(DualityInstance(family, d), universe, cfg)
        if not v.holds:
            raise ConstructionError(f"constructed dual fails on {v.counterexample}: {v.direction}")
    return d


def connected_cores(kind: Structure, max_order: int, cfg: HomSearchConfig | None = None) -> list[Structure]:
    """Connected cores with at most ``max_order`` elements, of the same kind as ``kind``."""
    from .generators import all_digraphs, all_graphs

    pool = all_graphs(max_order) if isinstance(kind, Graph) else all_digraphs(max_order)
    return [s for s in pool if is_connected(s) and is_core(s, cfg)]


def theta_product_bound(a: Structure, universe: ClassSample, t: int,
                        cfg: HomSearchConfig | None = None) -> dict:
    """Upper bound for Theta^t(a) via the product of restricted duals.

    For each connected core T of order <= t with T -/-> a, take its dual
    relative to ``universe`` (built with parameter t+1); the product A' of
    these duals satisfies a -> A'. Returns the bound (product of dual orders)
    and, when small enough, the product itself.
    """
    duals = []
    for tcore in connected_cores(a, t, cfg):
        if maps_to(tcore, a, cfg):
            continue
        duals.append(dual_construct([tcore], universe, t + 1, cfg))
    bound = prod(d.n for d in duals)
    out = {"bound": bound, "dual_orders": [d.n for d in duals], "product": None}
    if duals and bound <= PRODUCT_BUILD_CAP:
        p = product_dual(duals)
        if not maps_to(a, p, cfg):
            raise ConstructionError("A does not map to the product of its duals")
        out["product"] = p
    return out
