"""
Exceptions raised by the library layers and mapped to exit codes by run.py
"""


class MdrLabError(Exception):
    pass


class NotHermitian(MdrLabError, ValueError):
    pass


class NonHermitianObservable(MdrLabError, ValueError):
    pass


class DimensionMismatch(MdrLabError, ValueError):
    pass


class Degenerate(MdrLabError, ValueError):
    pass


class NotUnitary(MdrLabError, ValueError):
    pass


class NotQubit(MdrLabError, ValueError):
    pass


class ContextInvalid(MdrLabError, ValueError):
    pass


class MissingMeasurementContext(MdrLabError, ValueError):
    pass


class IncompleteBasis(MdrLabError, ValueError):
    pass


class DimensionTooLarge(MdrLabError, ValueError):
    pass


class Singular(MdrLabError, ValueError):
    pass


class IdentityViolation(MdrLabError, ArithmeticError):
    """Two independent evaluations of the same quantity disagree, which points to a convention bug"""
    pass


class ConfigError(MdrLabError, ValueError):
    pass
