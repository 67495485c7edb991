"""Finite relational structures, graphs and digraphs.

Everything here is immutable after construction. Vertices are always the
contiguous range ``0..n-1``.

A :class:`Graph` is a structure over the one-symbol signature ``E/2`` whose
relation holds both orientations of every edge; a :class:`Digraph` uses the
same signature with one tuple per arc. Code that only needs the relational
view can treat all three uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, NamedTuple, Sequence

from .errors import ArgumentError, SignatureMismatch

MAX_ARITY = 8


class Signature:
    """Ordered list of relation symbols with arities."""

    __slots__ = ("symbols", "_index")

    def __init__(self, symbols: Iterable[tuple[str, int]]):
        symbols = tuple((str(name), int(arity)) for name, arity in symbols)
        index = {}
        for i, (name, arity) in enumerate(symbols):
            if not name or any(ch.isspace() for ch in name) or "/" in name:
                raise ArgumentError(f"bad symbol name {name!r}")
            if name in index:
                raise ArgumentError(f"duplicate symbol {name!r}")
            if not 1 <= arity <= MAX_ARITY:
                raise ArgumentError(f"arity of {name!r} must be in 1..{MAX_ARITY}, got {arity}")
            index[name] = i
        self.symbols = symbols
        self._index = index

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.symbols)

    def arity(self, name: str) -> int:
        return self.symbols[self._index[name]][1]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ArgumentError(f"unknown symbol {name!r}") from None

    @property
    def max_arity(self) -> int:
        return max((a for _, a in self.symbols), default=0)

    def __contains__(self, name):
        return name in self._index

    def __len__(self):
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def __eq__(self, other):
        return isinstance(other, Signature) and self.symbols == other.symbols

    def __hash__(self):
        return hash(self.symbols)

    def __repr__(self):
        return "Signature(" + " ".join(f"{n}/{a}" for n, a in self.symbols) + ")"


GRAPH_SIGNATURE = Signature([("E", 2)])


class Block(NamedTuple):
    symbol: str
    tuple: tuple[int, ...]


class Structure:
    """A finite sigma-structure on universe ``range(n)``.

    ``relations`` may be a mapping from symbol name to tuples, or a sequence
    of tuple collections in signature order.
    """

    __slots__ = ("sig", "n", "relations", "_hash")

    def __init__(self, sig: Signature, n: int, relations=None):
        if n < 0:
            raise ArgumentError("universe size must be non-negative")
        if relations is None:
            relations = {}
        if isinstance(relations, Mapping):
            unknown = set(relations) - set(sig.names)
            if unknown:
                raise ArgumentError(f"symbols not in signature: {sorted(unknown)}")
            raw = [relations.get(name, ()) for name in sig.names]
        else:
            raw = list(relations)
            if len(raw) != len(sig):
                raise ArgumentError("relation count does not match signature")
        rels = []
        for (name, arity), tuples in zip(sig.symbols, raw):
            ts = frozenset(tuple(int(x) for x in t) for t in tuples)
            for t in ts:
                if len(t) != arity:
                    raise ArgumentError(f"tuple {t} has wrong arity for {name}/{arity}")
                for x in t:
                    if not 0 <= x < n:
                        raise ArgumentError(f"tuple {t} of {name} leaves universe 0..{n - 1}")
            rels.append(ts)
        self.sig = sig
        self.n = int(n)
        self.relations = tuple(rels)
        self._hash = None

    def tuples(self, name: str) -> frozenset:
        return self.relations[self.sig.index(name)]

    def blocks(self) -> list[Block]:
        return [
            Block(name, t)
            for (name, _), ts in zip(self.sig.symbols, self.relations)
            for t in sorted(ts)
        ]

    def num_tuples(self) -> int:
        return sum(len(ts) for ts in self.relations)

    def __len__(self):
        return self.n

    def __eq__(self, other):
        if not isinstance(other, Structure):
            return NotImplemented
        return self.sig == other.sig and self.n == other.n and self.relations == other.relations

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sig, self.n, self.relations))
        return self._hash

    def __repr__(self):
        parts = []
        for (name, _), ts in zip(self.sig.symbols, self.relations):
            parts.append(f"{name}={sorted(ts)}")
        return f"Structure(n={self.n}, {', '.join(parts)})"


class Graph(Structure):
    """Finite simple undirected graph."""

    __slots__ = ("edges", "_adj")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        norm = set()
        for e in edges:
            u, v = (int(x) for x in e)
            if u == v:
                raise ArgumentError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ArgumentError(f"edge {(u, v)} leaves vertex range 0..{n - 1}")
            norm.add((u, v) if u < v else (v, u))
        self.edges = tuple(sorted(norm))
        super().__init__(GRAPH_SIGNATURE, n, [[t for u, v in self.edges for t in ((u, v), (v, u))]])
        self._adj = None

    @classmethod
    def from_structure(cls, s: Structure) -> "Graph":
        if isinstance(s, Graph):
            return s
        if s.sig != GRAPH_SIGNATURE:
            raise SignatureMismatch("not a graph signature")
        rel = s.relations[0]
        for u, v in rel:
            if u == v or (v, u) not in rel:
                raise ArgumentError("relation is not loopless and symmetric")
        return cls(s.n, rel)

    @property
    def adj(self) -> tuple[frozenset, ...]:
        if self._adj is None:
            nb = [set() for _ in range(self.n)]
            for u, v in self.edges:
                nb[u].add(v)
                nb[v].add(u)
            self._adj = tuple(frozenset(x) for x in nb)
        return self._adj

    @property
    def adj_masks(self) -> tuple[int, ...]:
        return tuple(sum(1 << w for w in nb) for nb in self.adj)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)})"


class Digraph(Structure):
    """Finite loopless digraph; both ``(u, v)`` and ``(v, u)`` may be present."""

    __slots__ = ("arcs",)

    def __init__(self, n: int, arcs: Iterable[Sequence[int]] = ()):
        norm = set()
        for a in arcs:
            u, v = (int(x) for x in a)
            if u == v:
                raise ArgumentError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ArgumentError(f"arc {(u, v)} leaves vertex range 0..{n - 1}")
            norm.add((u, v))
        self.arcs = tuple(sorted(norm))
        super().__init__(GRAPH_SIGNATURE, n, [self.arcs])

    @classmethod
    def from_structure(cls, s: Structure) -> "Digraph":
        if isinstance(s, Digraph):
            return s
        if s.sig != GRAPH_SIGNATURE:
            raise SignatureMismatch("not a digraph signature")
        return cls(s.n, s.relations[0])

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={list(self.arcs)})"


def same_kind(template: Structure, s: Structure) -> Structure:
    """Return ``s`` re-wrapped as the same class as ``template`` when possible."""
    if isinstance(template, Graph) and not isinstance(s, Graph):
        return Graph.from_structure(s)
    if isinstance(template, Digraph) and not isinstance(s, Digraph):
        return Digraph.from_structure(s)
    return s


def check_same_signature(a: Structure, b: Structure) -> None:
    if a.sig != b.sig:
        raise SignatureMismatch(f"signature mismatch: {a.sig!r} vs {b.sig!r}")


@dataclass(frozen=True)
class Homomorphism:
    """A mapping ``source -> target`` carried as a checkable certificate."""

    source: Structure
    target: Structure
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(x) for x in self.map))

    def is_valid(self) -> bool:
        if self.source.sig != self.target.sig or len(self.map) != self.source.n:
            return False
        if any(not 0 <= x < self.target.n for x in self.map):
            return False
        f = self.map
        for src_rel, tgt_rel in zip(self.source.relations, self.target.relations):
            for t in src_rel:
                if tuple(f[x] for x in t) not in tgt_rel:
                    return False
        return True

    def image(self) -> frozenset:
        return frozenset(self.map)

    def is_injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.n

    def compose(self, after: "Homomorphism") -> "Homomorphism":
        """Return ``after o self``."""
        if after.source != self.target:
            raise ArgumentError("composition endpoints do not match")
        return Homomorphism(self.source, after.target, tuple(after.map[x] for x in self.map))

    def __call__(self, x: int) -> int:
        return self.map[x]
