"""Exception hierarchy shared by every asclab module."""


class AsclabError(Exception):
    """Base class for all errors raised by asclab."""


class InvalidInputError(AsclabError, ValueError):
    """Malformed arguments: bad indices, empty words, alphabet mismatch."""


class ParseError(InvalidInputError):
    """The automaton text format could not be parsed."""


class DomainError(AsclabError, ValueError):
    """Well-formed input outside an operation's domain (e.g. a non-PFA)."""


class MagicNumberError(AsclabError):
    """The requested complexity is provably unattainable for the operation."""

    def __init__(self, claim_id, operation, params, reason):
        self.claim_id = claim_id
        self.operation = operation
        self.params = dict(params)
        self.reason = reason
        super().__init__(f"{operation} {self.params}: {reason} [{claim_id}]")

    def to_dict(self):
        return {
            "claim_id": self.claim_id,
            "operation": self.operation,
            "params": self.params,
            "reason": self.reason,
        }


class NotFoundError(AsclabError):
    """Bounded search finished without finding a witness."""

    def __init__(self, operation, params, bounds):
        self.operation = operation
        self.params = dict(params)
        self.bounds = dict(bounds)
        super().__init__(f"no witness for {operation} {self.params} within {self.bounds}")

    def to_dict(self):
        return {"operation": self.operation, "params": self.params, "bounds": self.bounds}


class WitnessVerificationError(AsclabError):
    """A witness pair did not reproduce its claimed complexities."""
