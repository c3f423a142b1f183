"""Exception hierarchy shared by every module."""

from __future__ import annotations


class SemigroupError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(SemigroupError, ValueError):
    """Malformed arguments: wrong lengths, negative values, bad parameters."""


class NotNumerical(InvalidInput):
    """The generators have gcd different from 1."""


class NotMinimal(InvalidInput):
    """A generator list given to the strict constructor is redundant."""

    def __init__(self, generators, minimal):
        self.generators = tuple(generators)
        self.minimal = tuple(minimal)
        super().__init__(
            f"generators {list(self.generators)} are not minimal; "
            f"the minimal system is {list(self.minimal)}"
        )


class NotMember(InvalidInput):
    """An element required to lie in the semigroup does not."""


class InvalidRelation(InvalidInput):
    """A pair of factorizations does not have equal weighted degree."""

    def __init__(self, lhs, rhs, message: str | None = None):
        self.lhs = tuple(lhs)
        self.rhs = tuple(rhs)
        super().__init__(message or f"not a relation: {self.lhs} vs {self.rhs}")


class NotMonomialAfterSpecialization(SemigroupError):
    """Setting a variable to zero leaves a binomial whose terms are not in the ideal."""


class FamilyContractViolation(SemigroupError):
    """A closed-form claim failed on parameters that satisfy its hypotheses."""


class BudgetExceeded(SemigroupError):
    """A factorization fiber grew past the enumeration budget."""

    def __init__(self, element: int, budget: int):
        self.element = element
        self.budget = budget
        super().__init__(f"fiber of {element} exceeds budget of {budget} vectors")
