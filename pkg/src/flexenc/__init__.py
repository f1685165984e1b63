"""Deterministic encodings to plane cubics via even line families."""

from .cubic import DeltaWitness, MonicCubic, solve_with_delta, twisted_discriminant
from .curves import (
    BackMap,
    HessianCurve,
    ProjectivePoint,
    WeierstrassCurve,
    curve_from_json,
    gauss_map_hessian,
    restrict_via_parameterization,
    span_line,
)
from .errors import FlexencError, NotEven, SpecError
from .families import (
    EncoderPlan,
    LineFamily,
    builtin_family,
    certify_even,
    encode,
    family_discriminant,
    family_from_json,
    farashahi_encode,
    icart_encode,
    pencil_encode,
)
from .field import FieldElement, PrimeModulus, make_field
from .kernels import BACKEND
from .poly import Polynomial, RationalFunction

__version__ = "0.1.0"

__all__ = [
    "BACKEND", "BackMap", "DeltaWitness", "EncoderPlan", "FieldElement", "FlexencError",
    "HessianCurve", "LineFamily", "MonicCubic", "NotEven", "Polynomial", "PrimeModulus",
    "ProjectivePoint", "RationalFunction", "SpecError", "WeierstrassCurve", "builtin_family",
    "certify_even", "curve_from_json", "encode", "family_discriminant", "family_from_json",
    "farashahi_encode", "gauss_map_hessian", "icart_encode", "make_field", "pencil_encode",
    "restrict_via_parameterization", "solve_with_delta", "span_line", "twisted_discriminant",
]
