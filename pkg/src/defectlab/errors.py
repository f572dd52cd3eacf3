"""Exception hierarchy shared by every analysis module."""


class DefectLabError(Exception):
    """Base class for all library errors."""


class DomainMismatchError(DefectLabError, ValueError):
    """A symbol is not in the alphabet a morphism or word expects."""


class SizeBudgetError(DefectLabError, ValueError):
    """A generated word would exceed the configured symbol budget."""

    def __init__(self, length, budget):
        super().__init__(f"would-be length {length} exceeds symbol budget {budget}")
        self.length = length
        self.budget = budget


class NotProlongableError(DefectLabError, ValueError):
    pass


class ErasingMorphismError(DefectLabError, ValueError):
    pass


class NotAFactorError(DefectLabError, ValueError):
    pass


class RangeError(DefectLabError, ValueError):
    pass


class NonMinimalPeriodError(DefectLabError, ValueError):
    pass


class PalindromeRejectedError(DefectLabError, ValueError):
    pass


class InsufficientWindowError(DefectLabError, ValueError):
    """The analyzed window is too short to support the requested construction."""

    def __init__(self, message, needed=None):
        super().__init__(message)
        self.needed = needed
