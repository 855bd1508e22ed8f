"""Exception types shared across the package.

The CLI maps these onto exit codes: numeric failures (Jacobi
non-convergence, loss of positive definiteness, missing critical
coupling) exit with 3, representation-validity failures (unirrep
violation, non-unitary weights) with 4.
"""


class NumericError(RuntimeError):
    """A numerical procedure failed to converge or produced invalid output."""


class PositiveDefinitenessError(NumericError):
    """The interaction matrix is not positive definite (some mode has mu <= 0)."""


class NoCriticalCouplingError(NumericError):
    """The smallest weight stays positive for every coupling strength."""


class UnirrepError(ValueError):
    """The representation label p does not define a unitary irreducible module."""


class UnitarityError(ValueError):
    """Mixed-sign weights: the unitary real form is lost at this coupling."""


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds the desk-scale guard."""
