"""Integral-representation kernels of toric varieties.

Indices are one-based throughout, as in the fan and report files.
"""

from ._core import (
    DegenerateFanError,
    Fan,
    KahlerConeError,
    LinalgError,
    NumericError,
    ParseError,
    Report,
    TorkernelError,
    ValidationError,
    build_kernel,
    det_exact,
    domain_violations,
    estimate_C,
    lin_rel,
    load_fan,
    nu_sigma,
    parse_fan,
    parse_report,
    prim_coll,
    validate,
    verify_representation,
)

__all__ = [
    "DegenerateFanError",
    "Fan",
    "KahlerConeError",
    "LinalgError",
    "NumericError",
    "ParseError",
    "Report",
    "TorkernelError",
    "ValidationError",
    "build_kernel",
    "det_exact",
    "domain_violations",
    "estimate_C",
    "lin_rel",
    "load_fan",
    "nu_sigma",
    "parse_fan",
    "parse_report",
    "prim_coll",
    "validate",
    "verify_representation",
]
