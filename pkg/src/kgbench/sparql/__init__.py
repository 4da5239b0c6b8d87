"""SPARQL SELECT subset: AST, parser, in-memory engine, result comparison."""

from .ast import BoolExpr, Comparison, OrderKey, SelectQuery, Var, render_query
from .engine import UnsupportedFeatureError, execute_select
from .parser import SparqlParseError, parse_select
from .results import (
    ResultSet,
    parse_answer_rows,
    render_answer_rows,
    result_set_f1,
    term_answer_key,
)

__all__ = [
    "BoolExpr",
    "Comparison",
    "OrderKey",
    "ResultSet",
    "SelectQuery",
    "SparqlParseError",
    "UnsupportedFeatureError",
    "Var",
    "execute_select",
    "parse_answer_rows",
    "parse_select",
    "render_answer_rows",
    "render_query",
    "result_set_f1",
    "term_answer_key",
]
