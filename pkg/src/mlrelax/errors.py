"""Exception types shared across the package.

Input errors cover malformed user data and exceeded enumeration guards;
they map to usage failures at the CLI/service boundary.  Everything that
is a mathematical outcome (an infeasible instance, a redundant flower)
gets its own class so callers can react without string matching.
"""


class MlrelaxError(Exception):
    """Base class for all errors raised by this package."""


class InputError(MlrelaxError, ValueError):
    """Malformed or out-of-contract input data."""


class GuardError(InputError):
    """A configurable enumeration or DP guard was exceeded."""


# ground model
class EmptyEdgeError(InputError):
    pass


class EdgeTooSmallError(InputError):
    pass


class VarOutOfRangeError(InputError):
    pass


class TooLargeError(GuardError):
    pass


class InfeasibleError(MlrelaxError):
    """No 0/1 point satisfies the instance constraints."""


# inequality systems
class UnknownVariableError(InputError):
    pass


class UnsupportedVariableError(InputError):
    pass


class MissingCoordinateError(InputError):
    pass


class InvalidPointError(InputError):
    pass


class VariableMismatchError(InputError):
    pass


# flowers
class MalformedFlowerError(InputError):
    pass


class RedundantFlowerError(MlrelaxError):
    """A neighbor covers no center element exclusively; the inequality is dominated."""


class CenterTooLargeError(GuardError):
    pass


# linearization digraphs
class UnknownNodeError(InputError):
    pass


class ArcNotStrictSubsetError(InputError):
    pass


class DuplicateArcError(InputError):
    pass


class SuccessorUnionMismatchError(InputError):
    pass


class NotOfHypergraphError(InputError):
    pass


class PathExistsError(InputError):
    pass


# serialization
class FormatError(InputError):
    pass
