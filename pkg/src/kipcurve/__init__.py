"""Kippenhahn curves and circular components of low-rank partial isometries."""

from .kipp import (
    Circle,
    CircleReport,
    CurveTrace,
    TrigPolynomial,
    contains_circle,
    contains_point_circle,
    detect_circles,
    kippenhahn_polynomial,
    numerical_radius,
    support_function,
    trace_curve,
)
from .pisom import (
    CanonicalForm6,
    Defect2Form,
    NotPartialIsometryError,
    PartialIsometry,
    ath_matrix,
    canonicalize_defect2,
    canonicalize_rank3,
    compress_to_active_subspace,
    defect,
    jordan_block,
    project_to_partial_isometry,
    random_rank3,
    validate,
)

__version__ = "0.1.0"

__all__ = [
    "Circle",
    "CircleReport",
    "CurveTrace",
    "TrigPolynomial",
    "contains_circle",
    "contains_point_circle",
    "detect_circles",
    "kippenhahn_polynomial",
    "numerical_radius",
    "support_function",
    "trace_curve",
    "CanonicalForm6",
    "Defect2Form",
    "NotPartialIsometryError",
    "PartialIsometry",
    "ath_matrix",
    "canonicalize_defect2",
    "canonicalize_rank3",
    "compress_to_active_subspace",
    "defect",
    "jordan_block",
    "project_to_partial_isometry",
    "random_rank3",
    "validate",
    "__version__",
]
