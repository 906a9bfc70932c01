"""Exception hierarchy.

Each family carries the process exit code the CLI maps it to.
"""


class ProjSpecError(Exception):
    exit_code = 2


class NumericalError(ProjSpecError):
    exit_code = 2


class PreconditionError(ProjSpecError):
    exit_code = 3


class GeometricError(ProjSpecError):
    exit_code = 4


class DimensionError(PreconditionError, ValueError):
    pass


class SingularMatrixError(NumericalError):
    def __init__(self, message: str, margin: float):
        super().__init__(f"{message} (margin sigma_min/sigma_max = {margin:.3e})")
        self.margin = margin


class ConvergenceError(NumericalError):
    pass


class InterpolationError(NumericalError):
    pass


class DefectiveError(NumericalError):
    pass


class InconsistentWindingError(NumericalError):
    pass


class NotCommutativeError(PreconditionError):
    pass


class WholeSpaceError(PreconditionError):
    """Some joint character vanishes on every matrix, so P(A) is all of C^{n+1}."""


class DependentPointsError(GeometricError, ValueError):
    pass


class SingularPointError(GeometricError):
    def __init__(self, message: str, margin: float):
        super().__init__(f"{message} (margin {margin:.3e})")
        self.margin = margin


class LoopTouchesSpectrumError(GeometricError):
    def __init__(self, message: str, parameter: float, margin: float):
        super().__init__(f"{message} at parameter {parameter:.6g} (margin {margin:.3e})")
        self.parameter = parameter
        self.margin = margin


class NoAdmissibleSamplesError(GeometricError):
    pass


class NotSimilarError(ProjSpecError):
    exit_code = 0


class CandidateRejectedError(NumericalError):
    pass


class ZeroPolynomialError(GeometricError):
    pass


class LineInSpectrumError(ZeroPolynomialError):
    """The restriction of det A to a line is identically zero."""
