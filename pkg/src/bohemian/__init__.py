"""Exact maximal determinants of upper Hessenberg Bohemian matrices with a
constant subdiagonal: determinants, named constructions, closed-form maxima,
exhaustive search and maximizer-versus-ratio envelopes."""
from .constructions import FAMILIES, FamilyError, build, family_pattern
from .exact import IsolatingInterval, UniPoly, format_rational, parse_rational, sturm_root_isolate
from .hessenberg import (Binary, EntryPattern, HessMatrix, MatrixFormatError, Range, det_exact, det_polynomial,
                         format_matrix, parse_matrix, path_coefficients, realize_matrix, trailing_minors)
from .oracles import Regime, classify, max_case_i, max_case_ii, max_case_iii, max_negative_s
from .search import BudgetExceeded, MaxRecord, SearchSpec, build_template, search_max
from .transitions import TransitionDiagram, envelope, envelope_of, epsilon_of_n, maximizer_at_ratio

__version__ = "0.1.0"

__all__ = [
    "FAMILIES", "FamilyError", "build", "family_pattern",
    "IsolatingInterval", "UniPoly", "format_rational", "parse_rational", "sturm_root_isolate",
    "Binary", "EntryPattern", "HessMatrix", "MatrixFormatError", "Range", "det_exact", "det_polynomial",
    "format_matrix", "parse_matrix", "path_coefficients", "realize_matrix", "trailing_minors",
    "Regime", "classify", "max_case_i", "max_case_ii", "max_case_iii", "max_negative_s",
    "BudgetExceeded", "MaxRecord", "SearchSpec", "build_template", "search_max",
    "TransitionDiagram", "envelope", "envelope_of", "epsilon_of_n", "maximizer_at_ratio",
]
