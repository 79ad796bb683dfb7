"""Exception types shared across the package."""


class BoundExceeded(ValueError):
    """A search would leave the 64-bit word budget.

    Distinct from "no representation": the question was not answered.
    """


class BudgetExceeded(ValueError):
    """A requested scan is larger than the configured scan budget."""


class OutOfDomain(ValueError):
    """The input lies outside the domain where a criterion makes a claim."""


class NotApplicable(ValueError):
    """A reduction step has no auxiliary data for the requested case."""
