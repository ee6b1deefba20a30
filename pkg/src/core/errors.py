"""툴킷 예외 계층"""


class CliffordToolkitError(Exception):
    """툴킷 공통 기본 예외"""

    error_code = "TOOLKIT_ERROR"


class DimensionMismatchError(CliffordToolkitError, ValueError):
    error_code = "DIMENSION_MISMATCH"


class GradeOutOfRangeError(CliffordToolkitError, ValueError):
    error_code = "GRADE_OUT_OF_RANGE"


class NotAVectorError(CliffordToolkitError, ValueError):
    error_code = "NOT_A_VECTOR"


class UnsupportedDimensionError(CliffordToolkitError, ValueError):
    error_code = "UNSUPPORTED_DIMENSION"


class GridResolutionError(CliffordToolkitError, ValueError):
    """격자가 핵의 폭을 해상하지 못하거나 격자 조건 위반"""

    error_code = "GRID_RESOLUTION"


class NonRadialFieldError(CliffordToolkitError, ValueError):
    error_code = "NON_RADIAL_FIELD"


class ZeroFieldError(CliffordToolkitError, ValueError):
    error_code = "ZERO_FIELD"


class FitError(CliffordToolkitError, RuntimeError):
    """감쇠/다항식 적합 실패"""

    error_code = "FIT_FAILED"


class TrustRegionError(FitError):
    error_code = "TRUST_REGION_TOO_SMALL"


class HypothesisError(CliffordToolkitError, ValueError):
    """정리의 가정이 격자 위에서 성립하지 않음"""

    error_code = "HYPOTHESIS_FAILED"


class ConfigError(CliffordToolkitError, ValueError):
    error_code = "CONFIG_ERROR"


class InvalidParameterError(CliffordToolkitError, ValueError):
    """범위를 벗어난 수치 매개변수 (p < 1, δ 범위 밖 등)"""

    error_code = "INVALID_PARAMETER"


class BasisIndexError(CliffordToolkitError, IndexError):
    error_code = "BASIS_INDEX_OUT_OF_RANGE"
