"""Result records: witness pairs, attained-complexity sets, claim reports."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from . import operations as ops
from .automata import Dfa, asc, sc
from .errors import InvalidInputError, WitnessVerificationError
from .textformat import format_automaton, parse_automaton

UNARY_OPERATIONS = {
    "complement": ops.complement,
    "star": ops.star,
    "plus": ops.plus,
    "reversal": ops.reverse_pfa,
}
BINARY_OPERATIONS = {
    "union": ops.union,
    "intersection": ops.intersection,
    "difference": ops.difference,
    "right_quotient": ops.right_quotient,
}
PROVENANCES = ("paper-explicit", "derived-family", "search-derived")


def apply_operation(operation: str, left: Dfa, right: Dfa | None = None) -> Dfa:
    if operation in UNARY_OPERATIONS:
        if right is not None:
            raise InvalidInputError(f"{operation} takes one automaton")
        return UNARY_OPERATIONS[operation](left)
    if operation in BINARY_OPERATIONS:
        if right is None:
            raise InvalidInputError(f"{operation} takes two automata")
        return BINARY_OPERATIONS[operation](left, right)
    raise InvalidInputError(f"unknown operation {operation!r}")


@dataclass(frozen=True)
class WitnessPair:
    lemma_id: str
    operation: str
    left: Dfa
    right: Optional[Dfa]
    m: int
    n: Optional[int]
    alpha: int
    provenance: str
    minimal_inputs: bool = True
    extra: dict = field(default_factory=dict, compare=False)

    def result(self) -> Dfa:
        return apply_operation(self.operation, self.left, self.right)

    def problems(self) -> list[str]:
        """Every way in which the pair fails its claimed parameters."""
        found = []
        if asc(self.left) != self.m:
            found.append(f"asc(left)={asc(self.left)}, expected {self.m}")
        if self.right is not None and asc(self.right) != self.n:
            found.append(f"asc(right)={asc(self.right)}, expected {self.n}")
        if self.minimal_inputs:
            for name, A in (("left", self.left), ("right", self.right)):
                if A is not None and sc(A) != A.state_count:
                    found.append(f"{name} is not minimal")
        got = asc(self.result())
        if got != self.alpha:
            found.append(f"asc(result)={got}, expected {self.alpha}")
        return found

    def verify(self) -> "WitnessPair":
        found = self.problems()
        if found:
            raise WitnessVerificationError(f"{self.lemma_id}: " + "; ".join(found))
        return self

    def to_dict(self) -> dict:
        return {
            "lemma_id": self.lemma_id,
            "operation": self.operation,
            "m": self.m,
            "n": self.n,
            "alpha": self.alpha,
            "provenance": self.provenance,
            "left": format_automaton(self.left),
            "right": None if self.right is None else format_automaton(self.right),
            "extra": self.extra,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "WitnessPair":
        right = d.get("right")
        return cls(d["lemma_id"], d["operation"], parse_automaton(d["left"]),
                   None if right is None else parse_automaton(right),
                   d["m"], d.get("n"), d["alpha"], d["provenance"],
                   extra=d.get("extra") or {})


@dataclass(frozen=True)
class GSet:
    """Attained accepting state complexities for one operation and input sizes."""

    operation: str
    m: int
    n: Optional[int]
    bound: dict
    attained: tuple[int, ...]
    witnesses: dict = field(default_factory=dict, compare=False)  # alpha -> WitnessPair

    def to_dict(self) -> dict:
        return {
            "operation": self.operation,
            "m": self.m,
            "n": self.n,
            "bound": self.bound,
            "attained": list(self.attained),
            "witnesses": {str(a): w.to_dict() for a, w in sorted(self.witnesses.items())},
        }


VERDICTS = ("PASS", "COUNTEREXAMPLE", "INCONCLUSIVE")


@dataclass(frozen=True)
class ClaimReport:
    claim_id: str
    bounds: dict
    verdict: str
    counterexample: Optional[WitnessPair] = None
    attained: tuple = ()
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise InvalidInputError(f"unknown verdict {self.verdict!r}")

    def to_dict(self) -> dict:
        return {
            "claim_id": self.claim_id,
            "bounds": self.bounds,
            "verdict": self.verdict,
            "counterexample": None if self.counterexample is None
            else self.counterexample.to_dict(),
            "attained": [g.to_dict() for g in self.attained],
            "details": self.details,
        }
