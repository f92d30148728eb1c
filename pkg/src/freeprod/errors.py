"""Exception hierarchy."""


class FreeProductError(Exception):
    """Base class for all errors raised by freeprod."""


class InvalidAlgebra(FreeProductError, ValueError):
    pass


class WeightSumError(InvalidAlgebra):
    pass


class ZeroWeight(InvalidAlgebra):
    pass


class EmptyAlgebra(InvalidAlgebra):
    pass


class ShapeMismatch(FreeProductError, ValueError):
    pass


class HypothesisViolated(FreeProductError, ValueError):
    """Input lies outside the hypotheses of the structure result being applied."""


class DimensionHypothesisViolated(HypothesisViolated):
    pass


class DomainError(FreeProductError, ValueError):
    pass


class AmbientTooSmall(FreeProductError, ValueError):
    pass
