"""AST for the supported SPARQL SELECT subset, plus a deterministic renderer.

Subset: PREFIX declarations, SELECT [DISTINCT] with explicit variables or *,
basic graph patterns, FILTER with =, !=, <, > combined via && and ||,
ORDER BY, LIMIT and OFFSET.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Union

from ..rdf.model import RDF_TYPE, RdfTerm, shrink_iri


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return f"?{self.name}"


PatternTerm = Union[Var, RdfTerm]
TriplePattern = tuple[PatternTerm, PatternTerm, PatternTerm]

COMPARE_OPS = ("=", "!=", "<", ">")
BOOL_OPS = ("&&", "||")


@dataclass(frozen=True)
class Comparison:
    op: str
    left: PatternTerm
    right: PatternTerm

    def __post_init__(self):
        if self.op not in COMPARE_OPS:
            raise ValueError(f"unsupported comparison operator {self.op!r}")


@dataclass(frozen=True)
class BoolExpr:
    op: str
    left: "FilterExpr"
    right: "FilterExpr"

    def __post_init__(self):
        if self.op not in BOOL_OPS:
            raise ValueError(f"unsupported boolean operator {self.op!r}")


FilterExpr = Union[Comparison, BoolExpr]


@dataclass(frozen=True)
class OrderKey:
    var: Var
    descending: bool = False


@dataclass
class SelectQuery:
    prefixes: dict[str, str] = field(default_factory=dict)
    projection: Optional[list[str]] = None  # None means SELECT *
    patterns: list[TriplePattern] = field(default_factory=list)
    filters: list[FilterExpr] = field(default_factory=list)
    distinct: bool = False
    order_by: list[OrderKey] = field(default_factory=list)
    limit: Optional[int] = None
    offset: Optional[int] = None

    def pattern_variables(self) -> list[str]:
        """Variables in order of first appearance across the patterns."""
        seen: list[str] = []
        for pattern in self.patterns:
            for part in pattern:
                if isinstance(part, Var) and part.name not in seen:
                    seen.append(part.name)
        return seen

    def result_variables(self) -> list[str]:
        return self.projection if self.projection is not None else self.pattern_variables()

    def __eq__(self, other) -> bool:
        if not isinstance(other, SelectQuery):
            return NotImplemented
        return (
            self.prefixes == other.prefixes
            and self.projection == other.projection
            and self.patterns == other.patterns
            and self.filters == other.filters
            and self.distinct == other.distinct
            and self.order_by == other.order_by
            and self.limit == other.limit
            and self.offset == other.offset
        )


# rendering ------------------------------------------------------------

def _render_term(term: PatternTerm, prefixes: dict[str, str]) -> str:
    if isinstance(term, Var):
        return str(term)
    if term.is_iri:
        if term.value == RDF_TYPE:
            return "a"
        short = shrink_iri(term.value, prefixes)
        return short if short is not None else f"<{term.value}>"
    if term.is_blank:
        return f"_:{term.value}"
    escaped = term.value.replace("\\", "\\\\").replace('"', '\\"')
    rendered = f'"{escaped}"'
    if term.language:
        return f"{rendered}@{term.language}"
    if term.datatype:
        if _numeric_shorthand_ok(term):
            return term.value
        short = shrink_iri(term.datatype, prefixes)
        dt = short if short is not None else f"<{term.datatype}>"
        return f"{rendered}^^{dt}"
    return rendered


def _numeric_shorthand_ok(term: RdfTerm) -> bool:
    """Bare-token rendering must tokenize back to the same datatype."""
    import re

    from ..rdf.model import XSD_DECIMAL, XSD_DOUBLE, XSD_INTEGER

    patterns = {
        XSD_INTEGER: r"[+-]?\d+",
        XSD_DECIMAL: r"[+-]?\d*\.\d+",
        XSD_DOUBLE: r"[+-]?(\d+\.?\d*|\.\d+)[eE][+-]?\d+",
    }
    pattern = patterns.get(term.datatype or "")
    return pattern is not None and re.fullmatch(pattern, term.value) is not None


def _render_filter(expr: FilterExpr, prefixes: dict[str, str], top: bool = True) -> str:
    if isinstance(expr, Comparison):
        left = _render_term(expr.left, prefixes)
        right = _render_term(expr.right, prefixes)
        return f"{left} {expr.op} {right}"
    left = _render_filter(expr.left, prefixes, top=False)
    right = _render_filter(expr.right, prefixes, top=False)
    text = f"{left} {expr.op} {right}"
    return text if top else f"({text})"


def render_query(query: SelectQuery) -> str:
    """Deterministic text form; parse(render(q)) is structurally equal to q."""
    lines = []
    for prefix in sorted(query.prefixes):
        lines.append(f"PREFIX {prefix}: <{query.prefixes[prefix]}>")
    head = "SELECT "
    if query.distinct:
        head += "DISTINCT "
    if query.projection is None:
        head += "*"
    else:
        head += " ".join(f"?{v}" for v in query.projection)
    lines.append(head + " WHERE {")
    for s, p, o in query.patterns:
        lines.append(
            f"  {_render_term(s, query.prefixes)} "
            f"{_render_term(p, query.prefixes)} "
            f"{_render_term(o, query.prefixes)} ."
        )
    for f in query.filters:
        lines.append(f"  FILTER({_render_filter(f, query.prefixes)})")
    lines.append("}")
    if query.order_by:
        keys = []
        for key in query.order_by:
            keys.append(f"DESC({key.var})" if key.descending else str(key.var))
        lines.append("ORDER BY " + " ".join(keys))
    if query.limit is not None:
        lines.append(f"LIMIT {query.limit}")
    if query.offset is not None:
        lines.append(f"OFFSET {query.offset}")
    return "\n".join(lines) + "\n"
