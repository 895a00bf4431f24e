"""Exception hierarchy shared across the library.

Two failure families matter to callers (and to the CLI exit codes):
precondition violations (bad inputs, exit 2) and numerical-contract
failures (a computation could not meet its stated guarantee, exit 3).
"""


class PreconditionError(ValueError):
    """An operation was called with inputs violating its preconditions."""


class DimensionMismatchError(PreconditionError):
    """Vector/matrix dimensions do not match the ambient lattice."""


class DegenerateLatticeError(PreconditionError):
    """The Gram matrix has a zero eigenvalue where nondegeneracy is required."""


class ContractError(RuntimeError):
    """A numerical contract (residual, convergence, variance) failed."""


class PrecisionError(ContractError):
    """Requested tolerance lies below the representable resolution."""


class BranchPointError(ContractError):
    """A surface operation was refused near the branch locus; resample."""
