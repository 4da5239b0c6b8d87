"""Result sets, multiset F1 comparison, and the CSV answer convention.

Model answers carry result tables as CSV inside the fenced block: a header
line with the variable names, then one line per row. Cells hold prefixed or
full IRIs, or bare literal values.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from itertools import permutations
from typing import Optional

from ..rdf.model import RdfTerm, expand_prefixed, shrink_iri


@dataclass
class ResultSet:
    variables: list[str] = field(default_factory=list)
    rows: list[dict] = field(default_factory=list)  # var -> RdfTerm | str | None
    format_note: Optional[str] = None


def term_answer_key(value, prefixes: dict[str, str] | None = None) -> str:
    """Canonical comparison string for a result cell.

    RdfTerm: IRIs compare on the full IRI, literals on their lexical form.
    Strings (cells parsed from a CSV answer): unwrap <>-quotes and
    double-quotes, expand known prefixes.
    """
    prefixes = prefixes or {}
    if value is None:
        return ""
    if isinstance(value, RdfTerm):
        if value.is_iri:
            return value.value
        if value.is_blank:
            return f"_:{value.value}"
        return value.value
    cell = str(value).strip()
    if cell.startswith("<") and cell.endswith(">") and len(cell) > 1:
        return cell[1:-1]
    if cell.startswith('"') and cell.endswith('"') and len(cell) > 1:
        return cell[1:-1]
    expanded = expand_prefixed(cell, prefixes)
    if expanded is not None and ("://" in expanded or expanded.startswith("urn:")):
        return expanded
    return cell


def _row_key(row: dict, variables: list[str], prefixes: dict[str, str] | None) -> tuple:
    return tuple(term_answer_key(row.get(v), prefixes) for v in variables)


def result_set_f1(
    candidate: ResultSet,
    gold: ResultSet,
    prefixes: dict[str, str] | None = None,
) -> tuple[float, float, float]:
    """(precision, recall, f1) of rows compared as multisets.

    Candidate columns are matched to gold columns by the name-preserving
    assignment when the names agree, otherwise by the best column
    permutation. Row order and column order never affect the score. Both
    row sets empty scores 1. A column-count mismatch scores 0 (rows cannot
    match as maps).
    """
    from collections import Counter

    if not candidate.rows and not gold.rows:
        return (1.0, 1.0, 1.0)
    if not candidate.rows or not gold.rows:
        return (0.0, 0.0, 0.0)
    if len(candidate.variables) != len(gold.variables):
        return (0.0, 0.0, 0.0)

    gold_counts = Counter(_row_key(r, gold.variables, prefixes) for r in gold.rows)

    def tp_for(cand_order: list[str]) -> int:
        cand_counts = Counter(_row_key(r, cand_order, prefixes) for r in candidate.rows)
        return sum(min(n, gold_counts[k]) for k, n in cand_counts.items())

    cand_names = [v.lower() for v in candidate.variables]
    gold_names = [v.lower() for v in gold.variables]
    if sorted(cand_names) == sorted(gold_names):
        # align by name
        order = [candidate.variables[cand_names.index(g)] for g in gold_names]
        tp = tp_for(order)
    else:
        tp = max(tp_for(list(order)) for order in permutations(candidate.variables))

    precision = tp / len(candidate.rows)
    recall = tp / len(gold.rows)
    if precision + recall == 0:
        return (0.0, 0.0, 0.0)
    return (precision, recall, 2 * precision * recall / (precision + recall))


def parse_answer_rows(answer_block: str, prefixes: dict[str, str] | None = None) -> ResultSet:
    """Parse a CSV answer table: header of variable names, then rows.

    Tolerates optional quoting and surrounding whitespace. An unparsable
    table yields an empty ResultSet carrying a format note; scores then
    reflect the miss.
    """
    text = answer_block.strip()
    if not text:
        return ResultSet([], [], format_note="empty answer block")
    try:
        reader = csv.reader(io.StringIO(text), skipinitialspace=True)
        records = [row for row in reader if any(cell.strip() for cell in row)]
    except csv.Error as exc:
        return ResultSet([], [], format_note=f"CSV error: {exc}")
    if not records:
        return ResultSet([], [], format_note="no header line")
    header = [cell.strip().lstrip("?$").strip() for cell in records[0]]
    if not all(header):
        return ResultSet([], [], format_note="blank column name in header")
    rows = []
    for record in records[1:]:
        cells = [cell.strip() for cell in record]
        if len(cells) < len(header):
            cells += [""] * (len(header) - len(cells))
        rows.append({name: cells[i] for i, name in enumerate(header)})
    return ResultSet(header, rows)


def render_answer_rows(rs: ResultSet, prefixes: dict[str, str] | None = None) -> str:
    """Render a ResultSet in the CSV answer convention (gold answers)."""
    prefixes = prefixes or {}
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(rs.variables)
    for row in rs.rows:
        writer.writerow([_render_cell(row.get(v), prefixes) for v in rs.variables])
    return out.getvalue()


def _render_cell(value, prefixes: dict[str, str]) -> str:
    if value is None:
        return ""
    if isinstance(value, RdfTerm):
        if value.is_iri:
            short = shrink_iri(value.value, prefixes)
            return short if short is not None else f"<{value.value}>"
        if value.is_blank:
            return f"_:{value.value}"
        return value.value
    return str(value)
