"""Exception hierarchy.

Every error raised deliberately by the package derives from
:class:`AlexandrovError`, which is a :class:`ValueError`.  The CLI turns
these into machine-readable error objects using the class name as type.
"""

from __future__ import annotations


class AlexandrovError(ValueError):
    """Base class for all package errors."""


# posets and maps
class CycleError(AlexandrovError):
    def __init__(self, a: str, b: str):
        super().__init__(f"antisymmetry violated: {a} <= {b} and {b} <= {a}")
        self.pair = (a, b)


class DuplicateElement(AlexandrovError):
    pass


class UnknownElement(AlexandrovError):
    pass


class EmptyPoset(AlexandrovError):
    pass


class NotDirected(AlexandrovError):
    pass


class NotMonotone(AlexandrovError):
    def __init__(self, i: str, j: str, fi: str, fj: str):
        super().__init__(f"{i} <= {j} but f({i})={fi} is not <= f({j})={fj}")
        self.pair = (i, j)


class NotAChain(AlexandrovError):
    pass


# linear algebra
class ShapeMismatch(AlexandrovError):
    pass


class NotContained(AlexandrovError):
    pass


class DegreeOutOfRange(AlexandrovError):
    pass


class NotAComplex(AlexandrovError):
    pass


# sheaves
class PathInconsistency(AlexandrovError):
    def __init__(self, i: str, k: str):
        super().__init__(f"composites of cover maps from {i} to {k} disagree")
        self.pair = (i, k)


class NotOpen(AlexandrovError):
    pass


class NotNested(AlexandrovError):
    pass


class NaturalitySquareFails(AlexandrovError):
    def __init__(self, i: str, j: str):
        super().__init__(f"naturality square fails at ({i}, {j})")
        self.pair = (i, j)


class NotComposable(AlexandrovError):
    pass


class BaseMismatch(AlexandrovError):
    pass


class NotGalois(AlexandrovError):
    pass


class NotExact(AlexandrovError):
    pass


# cohomology
class DegreeBoundTooSmall(AlexandrovError):
    pass


class OracleMismatch(AlexandrovError):
    def __init__(self, godement: list[int], oracle: list[int]):
        super().__init__(f"pipelines disagree: godement={godement} oracle={oracle}")
        self.godement = godement
        self.oracle = oracle


# harness / io
class RecipeInfeasible(AlexandrovError):
    pass


class SizeLimitExceeded(AlexandrovError):
    pass


class ParseError(AlexandrovError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)
        self.line = line
        self.column = column
