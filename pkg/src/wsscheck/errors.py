"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for every error the engine raises deliberately."""


class DimensionMismatch(EngineError):
    """Operands live in different ambient spaces or have incompatible shapes."""


class InvalidForm(EngineError):
    """A bilinear form is not square / not symmetric / degenerate where required."""


class InvalidOperator(EngineError):
    """An operator required to be nilpotent is not."""


class InvalidComplex(EngineError):
    """A three-term sequence with g∘f != 0 was passed where a complex is required."""


class InvalidProfile(EngineError):
    """A Betti profile that no hard-Lefschetz structure can realize."""


class ParameterError(EngineError):
    """Generator parameter out of its documented range."""


class PreconditionError(EngineError):
    """Operation precondition unmet (for instance wrong relative dimension)."""


class SchemaError(EngineError):
    """Instance file or in-memory datum is structurally malformed."""


class ValidationGateError(EngineError):
    """A datum that fails axiom validation reached an operation requiring a valid one."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class InstanceInconsistency(EngineError):
    """A datum passed validation but breaks an identity derivable from the axioms."""


class ConventionViolation(EngineError):
    """Assembled differentials fail d1∘d1 = 0; signals corrupt instance data."""


class InternalConsistencyError(EngineError):
    """Two independent code paths disagree; a release-blocking engine bug."""


class MutationNotApplicable(EngineError):
    """The targeted axiom cannot be broken on this datum by a single-entry edit."""
