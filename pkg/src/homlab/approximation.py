"""t-approximations and Theta^t: an exhaustive oracle and the colouring quotient."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product

from .errors import ArgumentError, ConstructionError, PreconditionError
from .hom import HomSearchConfig, core, hom_exists
from .ops import gaifman, induced_substructure
from .sparsity import TdColoring, low_td_coloring
from .structures import Digraph, Graph, Homomorphism, Structure, same_kind
from .verdict import Verdict

STRUCTURE_TUPLE_CAP = 3


@dataclass(frozen=True)
class ApproxResult:
    approx: Structure
    forward: Homomorphism
    t: int
    exact: bool

    @property
    def order(self) -> int:
        return self.approx.n


@dataclass(frozen=True)
class QuotientTrace:
    coloring: TdColoring
    subsets: tuple[tuple[int, ...], ...]
    retractions: dict  # subset -> {vertex of A_I: image vertex}, both in A's ids
    classes: tuple[tuple[int, ...], ...]
    core_sizes: dict

    def to_text(self) -> str:
        lines = [
            f"t: {self.coloring.t}",
            f"colors: {self.coloring.color_count}",
            "coloring: " + " ".join(map(str, self.coloring.colors)),
        ]
        for sub in self.subsets:
            f = self.retractions[sub]
            img = " ".join(f"{x}>{f[x]}" for x in sorted(f))
            lines.append(f"subset {','.join(map(str, sub))}: core {self.core_sizes[sub]} map {img}")
        lines.append("classes: " + " | ".join(" ".join(map(str, c)) for c in self.classes))
        return "\n".join(lines)


def is_t_approximation(a: Structure, b: Structure, t: int, cfg: HomSearchConfig | None = None) -> Verdict:
    """Check ``a -> b`` and that every induced substructure of ``b`` of order < t maps to ``a``.

    Only subsets of size exactly ``min(t-1, |b|)`` are tested; smaller ones
    follow by restriction.
    """
    if t < 1:
        raise ArgumentError("t must be positive")
    f = hom_exists(a, b, cfg)
    if f is None:
        return Verdict(False, counterexample=a, direction="A -/-> B")
    size = min(t - 1, b.n)
    for subset in combinations(range(b.n), size):
        sub = induced_substructure(b, subset)
        if hom_exists(sub, a, cfg) is None:
            return Verdict(False, counterexample=sub, witness=f, direction="small substructure of B -/-> A",
                           details={"subset": subset})
    return Verdict(True, witness=f)


def _candidates(a: Structure, order: int, tuple_cap: int):
    from .generators import digraphs_of_order, graphs_of_order, structures_of_order

    if isinstance(a, Graph):
        return graphs_of_order(order)
    if isinstance(a, Digraph):
        return digraphs_of_order(order)
    return structures_of_order(a.sig, order, tuple_cap)


def theta_oracle(a: Structure, t: int, max_order: int, cfg: HomSearchConfig | None = None,
                 tuple_cap: int = STRUCTURE_TUPLE_CAP) -> ApproxResult | None:
    """Smallest t-approximation of ``a`` by exhaustive search, or None if none has
    order <= ``max_order``.

    Graph inputs search simple graphs, digraph inputs loopless digraphs and
    other structures all structures of the signature with at most
    ``tuple_cap`` tuples per relation.
    """
    if t < 1:
        raise ArgumentError("t must be positive")
    if a.n == 0:
        empty = same_kind(a, Structure(a.sig, 0))
        return ApproxResult(empty, Homomorphism(a, empty, ()), t, True)
    for order in range(1, max_order + 1):
        for b in _candidates(a, order, tuple_cap):
            if hom_exists(a, b, cfg) is None:
                continue
            v = is_t_approximation(a, b, t, cfg)
            if v.holds:
                return ApproxResult(b, v.witness, t, True)
    return None


def _subsets(n_colors: int, t: int):
    if n_colors >= t:
        return list(combinations(range(n_colors), t))
    return [s for k in range(1, n_colors + 1) for s in combinations(range(n_colors), k)]


def quotient_approximation(a: Structure, t: int, cfg: HomSearchConfig | None = None,
                           core_cap: int | None = None) -> tuple[ApproxResult, QuotientTrace]:
    """Quotient of ``a`` by a low tree-depth colouring and per-subset core retractions.

    Elements are merged when they share a colour and agree under every
    retraction ``f_I`` defined on them. The result is checked to be a
    t-approximation before it is returned.
    """
    if a.sig.max_arity > t:
        raise PreconditionError("t must be at least the maximum arity of the signature")
    n = a.n
    if n == 0:
        empty = same_kind(a, Structure(a.sig, 0))
        col = TdColoring(t, ())
        return (ApproxResult(empty, Homomorphism(a, empty, ()), t, False),
                QuotientTrace(col, (), {}, (), {}))
    col = low_td_coloring(gaifman(a), t)
    colors = col.colors
    subsets = _subsets(col.color_count, t)
    retr = {}
    sizes = {}
    for sub in subsets:
        members = [v for v in range(n) if colors[v] in sub]
        res = core(induced_substructure(a, members), cfg, cap=core_cap)
        retr[sub] = {members[i]: members[res.retraction.map[i]] for i in range(len(members))}
        sizes[sub] = res.core.n

    def signature(x):
        return (colors[x],) + tuple(retr[s][x] for s in subsets if colors[x] in s)

    cls_of = {}
    classes = []
    q = [0] * n
    for x in range(n):
        key = signature(x)
        if key not in cls_of:
            cls_of[key] = len(classes)
            classes.append([])
        q[x] = cls_of[key]
        classes[q[x]].append(x)

    # ([x1..xk]) in R iff (f_I(x1)..f_I(xk)) in R for every subset I covering their colours
    reps = [c[0] for c in classes]
    rels = []
    for (_, arity), rel in zip(a.sig.symbols, a.relations):
        out = set()
        if rel:
            for ctup in product(range(len(classes)), repeat=arity):
                cs = {colors[reps[c]] for c in ctup}
                usable = [s for s in subsets if cs <= set(s)]
                if usable and all(tuple(retr[s][reps[c]] for c in ctup) in rel for s in usable):
                    out.add(ctup)
        rels.append(out)
    # representative independence: any choice of class members gives the same verdict
    for ri, rel in enumerate(a.relations):
        for ctup in rels[ri]:
            cs = {colors[reps[c]] for c in ctup}
            for s in subsets:
                if not cs <= set(s):
                    continue
                for choice in _representatives(classes, ctup):
                    if tuple(retr[s][x] for x in choice) not in rel:
                        raise ConstructionError(
                            f"quotient relation not well defined at classes {ctup} under subset {s}")
    approx = same_kind(a, Structure(a.sig, len(classes), rels))
    forward = Homomorphism(a, approx, q)
    if not forward.is_valid():
        raise ConstructionError("x -> [x] is not a homomorphism")
    verdict = is_t_approximation(a, approx, t, cfg)
    if not verdict.holds:
        raise ConstructionError(f"quotient is not a {t}-approximation: {verdict.direction}")
    trace = QuotientTrace(col, tuple(subsets), retr, tuple(tuple(c) for c in classes), sizes)
    return ApproxResult(approx, forward, t, False), trace


def _representatives(classes, ctup, limit=64):
    """Representative tuples for a tuple of classes (capped; classes are small)."""
    out = [()]
    for c in ctup:
        out = [o + (x,) for o in out for x in classes[c]]
        if len(out) > limit:
            out = out[:limit]
    return out
