"""Exception hierarchy shared by every kvwitness module."""

from __future__ import annotations


class KVError(Exception):
    """Base class for all kvwitness errors."""


class SingularMatrix(KVError):
    pass


class NotSymmetric(KVError):
    pass


class DimensionMismatch(KVError):
    pass


class UnknownCurve(KVError):
    def __init__(self, name: str, context: str = ""):
        self.name = name
        msg = f"unknown curve {name!r}"
        if context:
            msg += f" ({context})"
        super().__init__(msg)


class DuplicateCurve(KVError):
    pass


class NonPrimeTerm(KVError):
    pass


class NonIntegralDivisor(KVError):
    pass


class NotContractible(KVError):
    pass


class RankNotOne(KVError):
    pass


class BadCharacteristic(KVError):
    pass


class CoincidentPoints(KVError):
    pass


class PointNotOnCurve(KVError):
    pass


class MultiplicityBoundExceeded(KVError):
    pass


class InvariantViolation(KVError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class ScenarioError(KVError):
    """Base for problems with a scenario file."""


class ParseError(ScenarioError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = f" at line {line}, column {column}" if line is not None else ""
        super().__init__(f"{message}{where}")


class SchemaError(ScenarioError):
    def __init__(self, message: str, path: str = "$"):
        self.path = path
        super().__init__(f"{path}: {message}")
