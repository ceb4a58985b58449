"""Exception hierarchy.

Every domain error carries a stable ``code`` string; the CLI reports it as
``{"error": code, "detail": ...}``.
"""

from __future__ import annotations


class StarReduceError(ValueError):
    code = "Error"

    def __init__(self, message: str = "", detail=None):
        super().__init__(message or self.code)
        self.detail = detail if detail is not None else message


class DimensionMismatch(StarReduceError):
    code = "DimensionMismatch"


class DimensionTooSmall(StarReduceError):
    code = "DimensionTooSmall"


class NotInvariant(StarReduceError):
    code = "NotInvariant"


class NotHermitian(StarReduceError):
    code = "NotHermitian"


class NonRealMu(StarReduceError):
    code = "NonRealMu"


class NonPositiveMu(StarReduceError):
    code = "NonPositiveMu"


class LimitDiverges(StarReduceError):
    code = "LimitDiverges"


class TranscendentalResidue(StarReduceError):
    code = "TranscendentalResidue"


class ZeroMomentumPoint(StarReduceError):
    code = "ZeroMomentumPoint"


class NotAHomMatrix(StarReduceError):
    code = "NotAHomMatrix"


class AlgebraMismatch(StarReduceError):
    code = "AlgebraMismatch"


class TruncationTooSmall(StarReduceError):
    code = "TruncationTooSmall"


class InvalidState(StarReduceError):
    code = "InvalidState"


class NotReducible(StarReduceError):
    code = "NotReducible"


class WeylHasNoEigenstates(StarReduceError):
    code = "WeylHasNoEigenstates"


class BadGeneratorIndex(StarReduceError):
    code = "BadGeneratorIndex"


class NonCommutativeAlgebra(StarReduceError):
    code = "NonCommutativeAlgebra"


class ExpressionSyntaxError(StarReduceError):
    """Malformed expression text; ``position`` is a 0-based character offset."""

    code = "SyntaxError"

    def __init__(self, position: int, expected, found: str = ""):
        self.position = position
        self.expected = sorted(expected)
        self.found = found
        what = f"found {found!r}" if found else "found end of input"
        message = f"at offset {position}: expected one of {', '.join(self.expected)}; {what}"
        super().__init__(message, {"position": position, "expected": self.expected, "found": found})


class IndexOutOfRange(StarReduceError):
    code = "IndexOutOfRange"


class MixedAlgebra(StarReduceError):
    code = "MixedAlgebra"
