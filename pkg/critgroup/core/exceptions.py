"""
Exception hierarchy. Every error carries the exit code the CLI reports for it.
"""


class CritGroupError(Exception):
    """Base error with a human-readable detail and a CLI exit code"""

    exit_code: int = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


# exit code 2: malformed input

class MalformedInputError(CritGroupError):
    exit_code = 2


class ShapeMismatchError(MalformedInputError):
    """Length mismatch or non-square matrix where a square one is required"""


class UnknownCatalogKeyError(MalformedInputError):
    pass


class InvalidParameterError(MalformedInputError):
    pass


class UnsupportedTableError(MalformedInputError):
    """Brauer table with values outside the integers"""


# exit code 1: validation or precondition failure

class ValidationFailedError(CritGroupError):
    exit_code = 1


class SingularMatrixError(CritGroupError):
    exit_code = 1


class NotSemisimpleError(CritGroupError):
    exit_code = 1


class NotAvalancheFiniteError(CritGroupError):
    exit_code = 1


class StepLimitExceededError(CritGroupError):
    exit_code = 1


class InfiniteCriticalGroupError(CritGroupError):
    exit_code = 1


class PreconditionError(CritGroupError):
    exit_code = 1


class InvalidConfigurationError(PreconditionError):
    pass


class NonIntegralFusionError(ValidationFailedError):
    pass


class NegativeMultiplicityError(ValidationFailedError):
    pass


# exit code 3: internal cross-check disagreement

class InternalConsistencyError(CritGroupError):
    exit_code = 3


class EquivalenceViolationError(InternalConsistencyError):
    pass
