"""Circular and fractional coloring of graphs: gadgets, exact solvers and
constructive extension routines, with verification suites over them."""
from .circular import (
    CircularColoring,
    SolveResult,
    check_circular,
    extend_crown_ck,
    extend_necklace_ck,
    propagate_necklace,
    solve_circular,
)
from .fractional import (
    FractionalColoring,
    check_fractional,
    compute_MN,
    extend_bull_fractional,
    extend_necklace_fractional,
    feasible_overlap,
    solve_fractional,
)
from .gadgets import CYCLE, EDGE, CenterKind, MultiSpec, NecklaceSpec
from .graph import Graph, build_graph, cycle_spectrum, girth
from .verify import SUITES, VerificationReport, certify_non_colorable, pipeline_five_color, run_verify

__version__ = "0.1.0"

__all__ = [
    "CYCLE", "EDGE", "CenterKind", "CircularColoring", "FractionalColoring", "Graph",
    "MultiSpec", "NecklaceSpec", "SUITES", "SolveResult", "VerificationReport",
    "build_graph", "certify_non_colorable", "check_circular", "check_fractional",
    "compute_MN", "cycle_spectrum", "extend_bull_fractional", "extend_crown_ck",
    "extend_necklace_ck", "extend_necklace_fractional", "feasible_overlap", "girth",
    "pipeline_five_color", "propagate_necklace", "run_verify", "solve_circular",
    "solve_fractional",
]
