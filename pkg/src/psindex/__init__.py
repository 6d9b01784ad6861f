"""Pseudodifferential symbol calculus and index computations on the circle."""

__version__ = "0.1.0"

from .errors import (BandwidthExceeded, CapExceeded, ConfigError, DepthExhausted,  # noqa: E402
                     NegativeValuation, NonIntegerWinding, NoPlateau, NotElliptic,
                     NotInvertible, ParseError, PsIndexError, ShapeMismatch, SymbolGradeError)
from .fourier import CoeffFn, cf_add, cf_dx, cf_inverse, cf_mean, cf_mul  # noqa: E402
from .index import IndexReport, analytic_index, index_report, topological_index  # noqa: E402
from .oracle import oracle_index, quantize  # noqa: E402
from .radul import LogQ, cyclic_check_antisym, cyclic_check_b, logq_commutator, radul  # noqa: E402
from .residue import wres  # noqa: E402
from .symbol import (ClassicalSymbol, HomComponent, sym_add, sym_commutator,  # noqa: E402
                     sym_leading, sym_parametrix, sym_scale, sym_star)
from .symbol_io import parse_symbol, render_symbol  # noqa: E402

__all__ = [
    "BandwidthExceeded", "CapExceeded", "ClassicalSymbol", "CoeffFn", "ConfigError",
    "DepthExhausted", "HomComponent", "IndexReport", "LogQ", "NegativeValuation",
    "NoPlateau", "NonIntegerWinding", "NotElliptic", "NotInvertible", "ParseError",
    "PsIndexError", "ShapeMismatch", "SymbolGradeError", "analytic_index", "cf_add", "cf_dx",
    "cf_inverse", "cf_mean", "cf_mul", "cyclic_check_antisym", "cyclic_check_b",
    "index_report", "logq_commutator", "oracle_index", "parse_symbol", "quantize", "radul",
    "render_symbol", "sym_add", "sym_commutator", "sym_leading", "sym_parametrix",
    "sym_scale", "sym_star", "topological_index", "wres",
]
