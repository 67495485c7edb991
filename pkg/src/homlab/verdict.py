from __future__ import annotations

from dataclasses import dataclass, field

from .structures import Homomorphism, Structure


@dataclass(frozen=True)
class Verdict:
    """Outcome of a verification.

    ``holds`` False always comes with a ``counterexample`` and the
    ``direction`` that failed; ``scope`` names the finite sample quantified over.
    """

    holds: bool
    counterexample: Structure | None = None
    witness: Homomorphism | None = None
    direction: str = ""
    scope: str = ""
    details: dict = field(default_factory=dict, compare=False)

    def __bool__(self):
        return self.holds
