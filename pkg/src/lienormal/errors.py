"""Exception types raised across the package."""


class LieNormalError(Exception):
    """Base class for domain errors (mapped to exit status 1 by the CLI)."""


class DegenerateInput(LieNormalError):
    pass


class InvalidRank(LieNormalError):
    pass


class MaximalRoot(LieNormalError):
    pass


class NotInLieAlgebra(LieNormalError):
    pass


class SingularGauge(LieNormalError):
    pass


class UnsupportedShape(LieNormalError):
    pass


class NonTermination(LieNormalError):
    pass


class VerificationFailed(LieNormalError):
    pass


class OutOfScope(LieNormalError):
    pass


class PreconditionViolated(LieNormalError):
    pass


class ParseError(LieNormalError):
    pass
