"""
Exceptions raised by squarepeg

Each class carries the exit code the CLI uses when it surfaces the error.
"""


class SquarePegError(Exception):
    """Base class for all squarepeg errors"""
    exit_code = 1
    hint = None


class InputError(SquarePegError, ValueError):
    """Malformed input or violated precondition on an argument"""
    exit_code = 2


class ShapeParseError(InputError):
    """Exception raised when a shape specification cannot be parsed"""
    pass


class ConfigError(InputError):
    """Exception raised for invalid configuration values"""
    pass


class DegenerateBody(InputError):
    """Exception raised when a point set does not span a proper convex polygon"""
    pass


class InvalidSector(InputError):
    """Exception raised for a zero radius vector or an angle outside (0, pi]"""
    pass


class PointOutsideBody(InputError):
    """Exception raised when a point is required to lie in the body but does not"""
    pass


class NotBoundaryPoint(InputError):
    """Exception raised when a point is required to lie on the boundary"""
    pass


class OriginNotInterior(InputError):
    """Exception raised when the origin is not strictly inside the body"""
    pass


class InvalidSide(InputError):
    """Exception raised for non-positive square side lengths"""
    pass


class NegativeHeight(InputError):
    """Exception raised when a height grid contains negative values"""
    pass


class GridTooSmall(InputError):
    """Exception raised when a height grid is too coarse or does not cover the body"""
    pass


class TheoryPreconditionError(SquarePegError):
    """The input falls outside the hypothesis of the construction"""
    exit_code = 3


class NotObtuse(TheoryPreconditionError):
    """Exception raised when the table pipeline is asked to handle a non-obtuse body"""
    hint = "the table pipeline needs an obtuse body; use --method oracle instead"


class ArcTooWide(TheoryPreconditionError):
    """Exception raised when the direction arc at a point is wider than a right angle"""
    hint = "trivial squares only exist at boundary points with a tangent cone of at most 90 degrees"


class NumericalFailure(SquarePegError):
    """A numerical search exhausted its budget"""
    exit_code = 4


class NoSolutionFound(NumericalFailure):
    """Exception raised when no start of the table solver reaches the level tolerance"""

    def __init__(self, message: str, best_residual: float = float("inf"), starts_tried: int = 0):
        super().__init__(message)
        self.best_residual = best_residual
        self.starts_tried = starts_tried


class SolverFailed(NumericalFailure):
    """Exception raised when the pipeline only finds trivial or inaccurate level squares"""
    pass


class DegenerateY(NumericalFailure):
    """Exception raised when the common height of a level square is not in (0, 1)"""
    pass
