"""Error taxonomy shared by all modules.

Each exception carries a short machine-readable ``code`` so the CLI can map
failures onto exit codes and verification reports without string matching.
"""


class OklError(Exception):
    """Base class for all numeric/structural failures raised by this package."""

    code = "OKL_ERROR"

    def __init__(self, message=""):
        super().__init__(f"{self.code}: {message}" if message else self.code)


class DegenerateAlgebraError(OklError):
    code = "DEGENERATE_ALGEBRA"


class NotSemisimpleError(OklError):
    code = "NOT_SEMISIMPLE"


class RepresentativeNotFoundError(OklError):
    code = "REPRESENTATIVE_NOT_FOUND"


class SingularInputError(OklError):
    code = "SINGULAR_INPUT"


class BasisIllConditionedError(OklError):
    code = "BASIS_ILL_CONDITIONED"


class LeftChartError(OklError):
    code = "LEFT_CHART"


class NotInOverlapError(OklError):
    code = "NOT_IN_OVERLAP"


class ExtrapolationDivergedError(OklError):
    code = "EXTRAPOLATION_DIVERGED"


class SingularGammaError(OklError):
    code = "SINGULAR_GAMMA"


class QuadratureFailError(OklError):
    code = "QUADRATURE_FAIL"


class TruncationDominatedError(OklError):
    code = "TRUNCATION_DOMINATED"


class InteriorRequiredError(OklError):
    code = "INTERIOR_REQUIRED"


class DivergentTailError(OklError):
    code = "DIVERGENT_TAIL"


class ConfigError(OklError):
    code = "CONFIG_ERROR"
