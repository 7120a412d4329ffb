"""Exception types shared across the package."""


class DomainError(ValueError):
    """Input lies outside the region where an evaluator is defined.

    Raised instead of returning garbage when a series or oracle is asked
    for a point outside its supported (or proven-convergent) range.
    """
