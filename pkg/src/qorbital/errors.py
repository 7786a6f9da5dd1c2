"""Exception hierarchy.

``DomainError`` covers bad inputs and mathematically impossible requests.
``TheoremViolation`` means a computed fact contradicts a proven statement,
which can only happen through an engine bug or corrupted input data.
"""


class QOrbitalError(Exception):
    pass


class DomainError(QOrbitalError, ValueError):
    pass


class TheoremViolation(QOrbitalError, RuntimeError):
    pass


class IncompatibleOperands(DomainError):
    pass


class GenerationFailure(DomainError):
    def __init__(self, msg: str, dimension: int):
        super().__init__(msg)
        self.dimension = dimension


class IllDefinedHopf(DomainError):
    pass


class InconsistencyError(TheoremViolation):
    pass


class LayoutError(DomainError):
    pass


class ResourceError(DomainError):
    pass


class InvalidGeneratingSet(DomainError):
    pass


class ConstructionBug(TheoremViolation):
    pass


class CatalogMismatch(TheoremViolation):
    pass


class Undecided(TheoremViolation):
    """A degree-2 vanishing question neither the rewriting table nor the model settles."""


class ParseError(DomainError):
    def __init__(self, msg: str, line: int = 1, column: int = 1):
        super().__init__(f"{line}:{column}: {msg}")
        self.line = line
        self.column = column
