"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class NotCoprimeError(DomainError):
    """The base shares a factor with the modulus."""

    def __init__(self, c, n):
        super().__init__(f"{c} is not coprime to {n}")
        self.c = c
        self.n = n


class PreconditionError(DomainError):
    """N is rejected before any order finding because it is classically easy."""

    def __init__(self, n, reason):
        super().__init__(f"N={n} rejected: {reason}")
        self.n = n
        self.reason = reason


class BudgetExceeded(RuntimeError):
    """An iteration, sampling or enumeration budget ran out."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; indicates a bug."""
