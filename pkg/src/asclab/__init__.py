"""Accepting state complexity of operations on permutation automata."""

from .automata import (Dfa, NerodePartition, ResidueSpec, UnaryPfaWord, asc, decode,
                       encode, is_unary_pfa_minimal, minimize, nerode_oracle, sc)
from .errors import (AsclabError, DomainError, InvalidInputError, MagicNumberError,
                     NotFoundError, ParseError, WitnessVerificationError)
from .records import ClaimReport, GSet, WitnessPair

__version__ = "0.1.0"

__all__ = [
    "AsclabError", "ClaimReport", "Dfa", "DomainError", "GSet", "InvalidInputError",
    "MagicNumberError", "NerodePartition", "NotFoundError", "ParseError", "ResidueSpec",
    "UnaryPfaWord", "WitnessPair", "WitnessVerificationError", "asc", "decode", "encode",
    "is_unary_pfa_minimal", "minimize", "nerode_oracle", "sc",
]
