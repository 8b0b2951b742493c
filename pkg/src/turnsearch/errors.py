"""Exception hierarchy shared by all modules."""


class TurnSearchError(Exception):
    """Base class for every error raised by this package."""


class InputError(TurnSearchError, ValueError):
    """An argument violates the precondition of the operation."""


class SolverError(TurnSearchError, RuntimeError):
    """The simplex solver hit an internal limit (e.g. the pivot guard)."""


class OracleNotApplicable(TurnSearchError):
    """The equality oracle cannot decide this LP (singular or infeasible basis)."""


class AuditError(TurnSearchError):
    """A guarantee audit could not resolve one of its probes."""
