"""Exception hierarchy shared by every module of the package."""


class RatLengthError(Exception):
    """Base class for all errors raised by ratlength."""


class PoleProximity(RatLengthError):
    pass


class MalformedFunction(RatLengthError):
    pass


class IndexOutOfRange(RatLengthError):
    pass


class DegenerateDenominator(RatLengthError):
    pass


class NoConvergence(RatLengthError):
    pass


class SingularityOnContour(RatLengthError):
    pass


class PoleInDisk(RatLengthError):
    pass


class InsufficientCoverage(RatLengthError):
    pass


class CriterionInapplicable(RatLengthError):
    pass


class BudgetUnderflow(RatLengthError):
    pass


class TooFewCoefficients(RatLengthError):
    pass


class SubcriticalDegree(RatLengthError):
    pass


class ContourEvaluationFailure(RatLengthError):
    pass


class QuadratureUnderResolved(RatLengthError):
    pass


class DegenerateImage(RatLengthError):
    pass


class ValueOnBoundary(RatLengthError):
    pass


class NonIntegerWinding(RatLengthError):
    pass


class EmptyFamily(RatLengthError):
    pass


class GeneratorFailure(RatLengthError):
    def __init__(self, degree, cause):
        super().__init__(f"generator failed at degree {degree}: {cause}")
        self.degree = degree
        self.cause = cause


class InsufficientData(RatLengthError):
    pass
