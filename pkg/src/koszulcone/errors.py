"""Exception types shared across the package."""


class KoszulConeError(Exception):
    """Base class for all package-specific errors."""


class MismatchedAmbient(KoszulConeError):
    """Subspaces fed to an intersection do not share an ambient dimension."""


class AmbientTooLarge(KoszulConeError):
    """A tensor-power ambient dimension exceeds the configured resource bound."""


class DegreeOverflow(KoszulConeError):
    """A graded computation asked for a degree beyond the built cutoff."""


class NotInIdeal(KoszulConeError):
    """decompose() was called on an element outside the ideal."""


class NotMultigraded(KoszulConeError):
    """A multigraded-only check was invoked on a ring with non-monomial relations."""


class CalibrationFailure(KoszulConeError):
    """Neither contraction slot yields d.d = 0; signals an upstream bug."""


class ClosureFailure(KoszulConeError):
    """The trace differential left a quotient-dual subcomplex; signals an
    action-convention or subspace bug."""


class LiftingFailure(KoszulConeError):
    """A mapping-cone comparison map has no solution at some degree."""


class NonMinimalCone(KoszulConeError):
    """A constant entry appeared in a cone differential (generator degrees
    must be nondecreasing)."""


class RegularOrderingViolation(KoszulConeError):
    """A closed-form differential term fell outside its quotient-dual basis
    with a nonzero residual."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotRegular(KoszulConeError):
    """closed_form_resolution invoked although the regular-ordering check fails."""


class NotMinimal(KoszulConeError):
    """linear_strand() needs a minimal complex but found a constant entry."""


class ParseError(KoszulConeError):
    """Input-file syntax error, with position information."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", col {column}" if column is not None else "") + ")"
        super().__init__(message + where)


class InputError(KoszulConeError):
    """Semantically invalid input (bad field, non-basis ideal generator, ...)."""
