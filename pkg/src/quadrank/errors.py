class DomainError(ValueError):
    """Invalid parameters: bad discriminant, n < 2, mismatched forms, ..."""


class BudgetError(RuntimeError):
    """A configured effort ceiling (factoring, enumeration size) was hit."""
