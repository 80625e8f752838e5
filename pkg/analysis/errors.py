"""
Exception hierarchy for the analysis layer.

Every error raised on purpose by the toolkit derives from AnalysisError, which
is itself a ValueError so pydantic validators can raise these types directly.
The CLI maps AnalysisError to exit status 1.
"""


class AnalysisError(ValueError):
    pass


class MeasureValidationError(AnalysisError):
    """A rate list or atom list violates the measure invariants."""


class DomainError(AnalysisError):
    """An argument lies outside the domain of the requested function."""


class PreconditionError(AnalysisError):
    """The inequality or formula requested does not apply at this argument."""


class RefusalError(AnalysisError):
    """The request is well defined but too large to evaluate by brute force."""


class MeasureFileError(AnalysisError):
    def __init__(self, path, line: int, reason: str):
        self.path = path
        self.line = line
        super().__init__(f"{path}, line {line}: {reason}")


class FamilyGenerationError(AnalysisError):
    def __init__(self, n: int, reason: str):
        self.n = n
        super().__init__(f"family generation failed for n={n}: {reason}")
