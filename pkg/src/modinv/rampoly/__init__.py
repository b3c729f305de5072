"""Exact ramification analysis of branch curves ``p(x, t) = 0`` on P1 x P1."""

from .analysis import (
    INF,
    CandidateReport,
    CompletenessCertificate,
    ExtensionFieldRequired,
    OffCurve,
    PointSpec,
    RampolyError,
    ResolutionReport,
    VerticalComponent,
    branch_base_orders,
    branch_parity_check,
    candidate_singular_points,
    certify_complete,
    chart_flip,
    fiber_contact,
    global_ram_index,
    load_poly_file,
    local_ram_index,
    localize,
    mult_at_point,
    multiplicity_sequence,
    parse_poly_file,
    resolve,
)
from .parser import PolySyntaxError, parse_poly
from .poly import BiPoly, UPoly

__all__ = [
    "INF", "BiPoly", "CandidateReport", "CompletenessCertificate", "ExtensionFieldRequired",
    "OffCurve", "PointSpec", "PolySyntaxError", "RampolyError", "ResolutionReport", "UPoly",
    "VerticalComponent", "branch_base_orders", "branch_parity_check",
    "candidate_singular_points", "certify_complete", "chart_flip", "fiber_contact",
    "global_ram_index", "load_poly_file", "local_ram_index", "localize", "mult_at_point",
    "multiplicity_sequence", "parse_poly", "parse_poly_file", "resolve",
]
