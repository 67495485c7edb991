"""Finite stand-ins for (infinite) classes of structures."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .canonical import canonical_code
from .errors import ArgumentError
from .structures import Structure

FLAG_NAMES = ("hereditary", "addable", "monotone", "topologically_closed")


@dataclass(frozen=True)
class ClassSample:
    """Explicit members plus closure flags asserted for the class they stand for.

    Members are deduplicated up to isomorphism and kept in canonical order
    (by order, then canonical code), which fixes the "first counterexample"
    of every verification. ``description`` names the quantification scope
    (e.g. ``graphs<=5``) and is echoed in reports.
    """

    members: tuple[Structure, ...]
    flags: frozenset = field(default_factory=frozenset)
    description: str = "sample"

    def __post_init__(self):
        bad = set(self.flags) - set(FLAG_NAMES)
        if bad:
            raise ArgumentError(f"unknown class flags {sorted(bad)}")
        sigs = {m.sig for m in self.members}
        if len(sigs) > 1:
            raise ArgumentError("sample members must share one signature")

    @classmethod
    def build(cls, members: Iterable[Structure], flags=(), description: str = "sample") -> "ClassSample":
        seen = {}
        for m in members:
            seen.setdefault((m.n, canonical_code(m, cap=None)), m)
        ordered = tuple(seen[k] for k in sorted(seen))
        return cls(ordered, frozenset(flags), description)

    def has(self, flag: str) -> bool:
        return flag in self.flags

    @property
    def max_order(self) -> int:
        return max((m.n for m in self.members), default=0)

    @property
    def signature(self):
        return self.members[0].sig if self.members else None

    def filter(self, pred: Callable[[Structure], bool], description: str, flags=None) -> "ClassSample":
        kept = tuple(m for m in self.members if pred(m))
        return ClassSample(kept, self.flags if flags is None else frozenset(flags), description)

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)
