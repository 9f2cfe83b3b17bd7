"""Rational-curve certificates on genus-2 Jacobians and their Kummer surfaces."""

from .curve import Curve, CurvePoint, count_points, curve_points, new_curve
from .errors import KummerError, ValidationError
from .field import build_ambient
from .jacobian import MumfordDivisor, cantor_add, enumerate_jacobian, scalar_mul, zeta_data
from .kummer import certify_kummer_point, to_kummer
from .search import cover_check, find_certificate, verify_certificate

__version__ = "0.1.0"

__all__ = [
    "Curve",
    "CurvePoint",
    "KummerError",
    "MumfordDivisor",
    "ValidationError",
    "build_ambient",
    "cantor_add",
    "certify_kummer_point",
    "count_points",
    "cover_check",
    "curve_points",
    "enumerate_jacobian",
    "find_certificate",
    "new_curve",
    "scalar_mul",
    "to_kummer",
    "verify_certificate",
    "zeta_data",
]
