"""Frobenius nonclassical plane curves over finite fields: point counts,
singularities, branches, genus, and the rational point bounds they satisfy."""

from .curve import PlaneCurve, curve_from_text, new_curve
from .gf import build_field
from .invariants import CurveReport, analyze, report_to_dict
from .mpoly import MultiPoly, parse_poly

__version__ = "0.1.0"

__all__ = [
    "CurveReport",
    "MultiPoly",
    "PlaneCurve",
    "analyze",
    "build_field",
    "curve_from_text",
    "new_curve",
    "parse_poly",
    "report_to_dict",
]
