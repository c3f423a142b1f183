"""Numerical semigroups generated by concatenated arithmetic sequences."""

from .core import (
    AperyTable,
    SemigroupProfile,
    SemigroupSpec,
    apery,
    contains,
    frobenius,
    gaps,
    genus,
    is_symmetric,
    minimal_generators,
    profile,
)
from .errors import (
    BudgetExceeded,
    FamilyContractViolation,
    InvalidInput,
    InvalidRelation,
    NotMember,
    NotMinimal,
    NotMonomialAfterSpecialization,
    NotNumerical,
    SemigroupError,
)
from .presentations import (
    BettiData,
    BinomialRelation,
    betti_elements,
    factorization_graph_components,
    factorizations,
    minimal_presentation_cardinality,
    nu,
    relations_generate_up_to,
    relations_minimal,
)

__version__ = "0.1.0"
