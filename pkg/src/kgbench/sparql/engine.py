"""In-memory evaluation of the SELECT subset over an RdfGraph.

Bag semantics: basic graph pattern join, filters applied post-join, then
projection, DISTINCT, ORDER BY and LIMIT/OFFSET in that order.
"""

from __future__ import annotations

from ..rdf.compare import normalize_term
from ..rdf.model import (
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    RdfGraph,
    RdfTerm,
)
from .ast import BoolExpr, Comparison, FilterExpr, SelectQuery, Var
from .results import ResultSet

_NUMERIC_TYPES = (XSD_INTEGER, XSD_DECIMAL, XSD_DOUBLE)


class UnsupportedFeatureError(RuntimeError):
    """The engine met a query construct outside the supported subset."""


class _FilterTypeError(Exception):
    """Comparison over incompatible operands; the row fails the filter."""


def _match_term(pattern_part, term: RdfTerm, binding: dict) -> dict | None:
    """Match one pattern position against a concrete term.

    Returns the (possibly extended) binding, or None on mismatch.
    """
    if isinstance(pattern_part, Var):
        bound = binding.get(pattern_part.name)
        if bound is None:
            extended = dict(binding)
            extended[pattern_part.name] = term
            return extended
        return binding if normalize_term(bound) == normalize_term(term) else None
    return binding if normalize_term(pattern_part) == normalize_term(term) else None


def _match_pattern(pattern, graph: RdfGraph, bindings: list[dict]) -> list[dict]:
    out = []
    for binding in bindings:
        for s, p, o in sorted(graph.triples, key=repr):
            b1 = _match_term(pattern[0], s, binding)
            if b1 is None:
                continue
            b2 = _match_term(pattern[1], p, b1)
            if b2 is None:
                continue
            b3 = _match_term(pattern[2], o, b2)
            if b3 is not None:
                out.append(b3)
    return out


def _numeric_value(term: RdfTerm) -> float | None:
    if not term.is_literal or term.datatype not in _NUMERIC_TYPES:
        return None
    try:
        return float(term.value)
    except ValueError:
        return None


def _resolve(operand, binding: dict) -> RdfTerm:
    if isinstance(operand, Var):
        term = binding.get(operand.name)
        if term is None:
            raise _FilterTypeError(f"unbound variable ?{operand.name}")
        return term
    return operand


def _compare(op: str, left: RdfTerm, right: RdfTerm) -> bool:
    ln, rn = _numeric_value(left), _numeric_value(right)
    if ln is not None and rn is not None:
        return {"=": ln == rn, "!=": ln != rn, "<": ln < rn, ">": ln > rn}[op]
    if op in ("=", "!="):
        equal = normalize_term(left) == normalize_term(right)
        return equal if op == "=" else not equal
    # ordering comparisons need both sides of the same, orderable kind
    if left.is_literal and right.is_literal:
        if left.datatype in (None, *_NUMERIC_TYPES) and right.datatype in (None, *_NUMERIC_TYPES):
            if (left.datatype is None) != (right.datatype is None):
                raise _FilterTypeError("cannot order a string against a number")
        return left.value < right.value if op == "<" else left.value > right.value
    if left.is_iri and right.is_iri:
        return left.value < right.value if op == "<" else left.value > right.value
    raise _FilterTypeError("operands are not comparable")


def _eval_filter(expr: FilterExpr, binding: dict) -> bool:
    if isinstance(expr, Comparison):
        try:
            return _compare(expr.op, _resolve(expr.left, binding), _resolve(expr.right, binding))
        except _FilterTypeError:
            return False
    if isinstance(expr, BoolExpr):
        if expr.op == "&&":
            return _eval_filter(expr.left, binding) and _eval_filter(expr.right, binding)
        return _eval_filter(expr.left, binding) or _eval_filter(expr.right, binding)
    raise UnsupportedFeatureError(f"unsupported filter expression {type(expr).__name__}")


def _sort_key(term: RdfTerm | None):
    if term is None:
        return (0, "", 0.0, "")
    if term.is_blank:
        return (1, term.value, 0.0, "")
    if term.is_iri:
        return (2, term.value, 0.0, "")
    num = _numeric_value(term)
    if num is not None:
        return (3, "", num, term.value)
    return (4, term.value, 0.0, (term.language or "") + (term.datatype or ""))


def execute_select(query: SelectQuery, graph: RdfGraph) -> ResultSet:
    """Evaluate the query; raises UnsupportedFeatureError rather than
    silently answering wrong for out-of-subset constructs."""
    bindings: list[dict] = [{}]
    for pattern in query.patterns:
        bindings = _match_pattern(pattern, graph, bindings)
        if not bindings:
            break
    bindings = [b for b in bindings if all(_eval_filter(f, b) for f in query.filters)]

    variables = query.result_variables()
    pattern_vars = set(query.pattern_variables())
    if query.projection is not None:
        for name in query.projection:
            if name not in pattern_vars:
                raise UnsupportedFeatureError(
                    f"projected variable ?{name} is not bound by any pattern"
                )
    for key in query.order_by:
        if key.var.name not in pattern_vars:
            raise UnsupportedFeatureError(
                f"ORDER BY variable ?{key.var.name} does not occur in the patterns"
            )
        if query.distinct and key.var.name not in variables:
            raise UnsupportedFeatureError(
                "ORDER BY over a non-projected variable is ambiguous under DISTINCT"
            )

    if query.distinct:
        seen = set()
        unique = []
        for binding in bindings:
            key = tuple(_row_cell_key(binding.get(name)) for name in variables)
            if key not in seen:
                seen.add(key)
                unique.append(binding)
        bindings = unique

    # sort on the full bindings so non-projected order keys work
    for key in reversed(query.order_by):
        bindings.sort(
            key=lambda b: _sort_key(b.get(key.var.name)), reverse=key.descending
        )

    offset = query.offset or 0
    if offset:
        bindings = bindings[offset:]
    if query.limit is not None:
        bindings = bindings[: query.limit]
    rows = [{name: b.get(name) for name in variables} for b in bindings]
    return ResultSet(list(variables), rows)


def _row_cell_key(term: RdfTerm | None):
    return None if term is None else normalize_term(term)
