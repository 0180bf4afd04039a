"""Exception hierarchy for lvmbkit.

Every error raised on purpose by the toolkit derives from :class:`LVMBError`,
so callers (the CLI in particular) can separate input problems from bugs.
"""


class LVMBError(Exception):
    """Base class for all toolkit errors."""


class ConfigSyntaxError(LVMBError, ValueError):
    """Malformed configuration document."""


class DomainError(LVMBError, ValueError):
    """Well-formed document whose values violate a structural constraint."""


class SingularMatrixError(LVMBError, ArithmeticError):
    """Inverse requested for a matrix of deficient rank."""


class SingularA(SingularMatrixError):
    """The difference matrix A is singular; the rank condition fails."""


class NoAdmissiblePermutation(LVMBError):
    """No (m+1)-subset of columns satisfies the rank condition."""


class ValidationFailed(LVMBError):
    """An operation required a configuration that passes :func:`validate`."""

    def __init__(self, failed):
        self.failed = list(failed)
        super().__init__("validation failed: " + ", ".join(self.failed))


class EmptySubset(LVMBError, ValueError):
    pass


class AllCoordinatesZero(LVMBError, ValueError):
    pass


class ZeroField(LVMBError, ValueError):
    pass


class RelationRankDeficient(LVMBError):
    """The bordered matrix [1; Lambda] has rank below m+1."""


class CertificateImpossible(LVMBError):
    """Greedy basis selection stalled below nu."""


class ActionOverflow(LVMBError, OverflowError):
    """An exponent of the action left the double-precision range."""


class PointNotInV(LVMBError, ValueError):
    pass


class Inconsistent(LVMBError):
    """The normal-form linear system has no solution within tolerance."""


class TargetAtZero(LVMBError, ValueError):
    pass


class ParamsOutOfRange(LVMBError, ValueError):
    pass
