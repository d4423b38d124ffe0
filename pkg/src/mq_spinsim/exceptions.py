class ContractViolation(ValueError):
    """An input failed a numerical precondition (e.g. a non-Hermitian Hamiltonian)."""


class NumericalContractError(ArithmeticError):
    """A computed quantity left its admissible range beyond tolerance."""


class DimensionBudgetError(ValueError):
    """Requested chain is too long for dense simulation."""
