"""Tools for the Temporal Logic Synthesis Format."""

from .basic import parse_basic_spec
from .elaborate import BasicSpec, elaborate, formula_from_text
from .errors import ElaborationError, ExportError, KindError, LexError, ParseError, TlsfError
from .export import export, export_spec, print_basic
from .fragment import classify
from .parser import parse_expr, parse_spec
from .semantics import adapt_target, combine

__all__ = [
    "BasicSpec", "ElaborationError", "ExportError", "KindError", "LexError", "ParseError",
    "TlsfError", "adapt_target", "classify", "combine", "elaborate", "export", "export_spec",
    "formula_from_text", "parse_basic_spec", "parse_expr", "parse_spec", "print_basic",
]
