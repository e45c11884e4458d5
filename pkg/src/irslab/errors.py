"""Exception hierarchy shared across the package.

The CLI maps these onto exit codes: DomainError -> 1, BudgetError -> 2.
Verification failures (invariance breaches etc.) are CLI-level decisions,
not exceptions.
"""


class DomainError(ValueError):
    """Invalid input: bad parameter range, malformed file, graph not of the
    required kind."""


class BudgetError(RuntimeError):
    """A lazy exploration exceeded its configured vertex budget."""


class InvalidGraphError(DomainError):
    """A graph violated the one-in/one-out-per-label (permutation) property."""


class HorizonError(DomainError):
    """A walk on a stored finite ball ran past the explored radius."""


class NotInZError(DomainError):
    """A graph failed the encoded-subgroup structure checks."""


class NotInYError(DomainError):
    """No translate of the given subgroup lands in the encoded set."""


class AmbiguityError(DomainError):
    """Finite-radius retraction test could not be confirmed; retry with a
    larger radius."""
