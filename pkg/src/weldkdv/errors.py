"""Exception hierarchy shared by every module.

Each operation documents which of these it can raise; all inherit from
WeldKdVError so callers can catch the package family in one clause.
"""


class WeldKdVError(Exception):
    """Base class for all package errors."""


class ConfigInvalid(WeldKdVError):
    pass


class SingularDerivative(WeldKdVError):
    pass


class DegenerateTriple(WeldKdVError):
    pass


class InverseUndefined(WeldKdVError):
    pass


class NonMonotone(WeldKdVError):
    pass


class DegreeOverflow(WeldKdVError):
    pass


class NonContractive(WeldKdVError):
    pass


class NoConvergence(WeldKdVError):
    pass


class SingularityTooClose(WeldKdVError):
    pass


class DegenerateJacobian(WeldKdVError):
    pass


class MoebiusDegenerate(WeldKdVError):
    pass


class NotStarShaped(WeldKdVError):
    pass


class IterationDiverged(WeldKdVError):
    pass


class WeldingInconsistent(WeldKdVError):
    pass


class AssumptionViolated(WeldKdVError):
    pass


class BoundViolated(WeldKdVError):
    pass


class WronskianCollapse(WeldKdVError):
    pass


class NonDiffeomorphism(WeldKdVError):
    pass


class GraphTransversalityLost(WeldKdVError):
    pass


class BasePointMismatch(WeldKdVError):
    pass


class NotHermitian(WeldKdVError):
    pass


class NotOrthonormal(WeldKdVError):
    pass


class NotPositiveDefinite(WeldKdVError):
    pass


class ZeroDirection(WeldKdVError):
    pass


class StepRejected(WeldKdVError):
    pass


class Blowup(WeldKdVError):
    pass


class ResidualDiverged(WeldKdVError):
    pass
