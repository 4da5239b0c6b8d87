"""Regenerate the shipped task-data containers (plaintext + encrypted).

Run as ``python -m kgbench.taskdata.build``. The encryption passphrase is
taken from LKGB_TASKDATA_KEY, falling back to the documented development
passphrase so a fresh checkout can rebuild identical containers.
"""

from __future__ import annotations

import json
import os
import random
import sys
from collections import deque
from pathlib import Path

from ..crypto import TASKDATA_KEY_ENV, encrypt_task_data
from ..rdf import parse_graph, serialize_graph
from ..rdf.corrupt import inject_syntax_errors
from ..rdf.model import RdfGraph, term_to_json
from ..sparql import execute_select, parse_select
from ..sparql.parser import SparqlParseError
from . import files_dir
from .corpus import (
    CONNECTION_CASES,
    FACT_SHEET,
    FACT_SHEET_GOLD_TURTLE,
    FACT_SHEET_VOCAB,
    ORG_GRAPH_TURTLE,
    ORG_PREFIX,
    ORG_VARIANT_DROPS,
    SPARQL_DATASETS,
)

DEV_PASSPHRASE = "kgbench-dev"
SCHEMA = "kgbench-taskdata-v1"

FIX_FORMATS = ("turtle", "jsonld", "ntriples")
_FIX_ERROR_COUNTS = [1, 2, 3, 4, 2]
_FIX_KINDS = {
    "turtle": [
        "missing_char",
        "misspelled_prefix",
        "lang_type_conflict",
        "bad_escape",
        "extra_char",
    ],
    "jsonld": [
        "missing_char",
        "misspelled_prefix",
        "lang_type_conflict",
        "bad_escape",
        "extra_char",
    ],
    "ntriples": ["missing_char", "lang_type_conflict", "bad_escape", "extra_char"],
}

QUERY_CORRUPTION_KINDS = (
    "deleted_brace",
    "misspelled_keyword",
    "missing_var_marker",
    "unterminated_string",
)


def _org_variant(drops: tuple[str, ...]) -> RdfGraph:
    graph = parse_graph(ORG_GRAPH_TURTLE, "turtle")
    if not drops:
        return graph
    dropped_iris = {ORG_PREFIX + local for local in drops}
    variant = RdfGraph(prefixes=dict(graph.prefixes))
    for s, p, o in graph.triples:
        if s.is_iri and s.value in dropped_iris:
            continue
        if o.is_iri and o.value in dropped_iris:
            continue
        variant.triples.add((s, p, o))
    return variant


def build_rdf_syntax_fix() -> dict:
    entries = []
    for fmt_index, fmt in enumerate(FIX_FORMATS):
        kinds_pool = _FIX_KINDS[fmt]
        for i, drops in enumerate(ORG_VARIANT_DROPS):
            graph = _org_variant(drops)
            gold_doc = serialize_graph(graph, fmt)
            error_count = _FIX_ERROR_COUNTS[i]
            kinds = [kinds_pool[(i + k) % len(kinds_pool)] for k in range(error_count)]
            corrupted, notes = inject_syntax_errors(
                gold_doc, fmt, kinds, seed=1000 + 17 * i + 97 * fmt_index
            )
            entries.append(
                {
                    "caseId": f"{fmt}-{i + 1}",
                    "format": fmt,
                    "inputDocument": corrupted,
                    "goldDocument": gold_doc,
                    "errorCount": error_count,
                    "errors": [
                        {"kind": n.kind, "line": n.line, "description": n.description}
                        for n in notes
                    ],
                }
            )
    return {"schema": SCHEMA, "taskClassId": "RdfSyntaxFixList", "entries": entries}


def _shortest_path(graph: RdfGraph, start: str, end: str) -> list[list[str]]:
    """Shortest undirected path between two IRIs; hops in graph direction."""
    edges = {}
    for s, p, o in graph.triples:
        if o.is_literal or s.is_blank or o.is_blank:
            continue
        edges.setdefault(s.value, []).append((o.value, (s.value, p.value, o.value)))
        edges.setdefault(o.value, []).append((s.value, (s.value, p.value, o.value)))
    seen = {start}
    queue = deque([(start, [])])
    while queue:
        node, path = queue.popleft()
        if node == end:
            return [list(hop) for hop in path]
        for neighbor, hop in sorted(edges.get(node, [])):
            if neighbor not in seen:
                seen.add(neighbor)
                queue.append((neighbor, path + [hop]))
    raise ValueError(f"no path between {start} and {end}")


def build_connection_explain() -> dict:
    graph = parse_graph(ORG_GRAPH_TURTLE, "turtle")
    entries = []
    for a, b in CONNECTION_CASES:
        start, end = ORG_PREFIX + a, ORG_PREFIX + b
        path = _shortest_path(graph, start, end)
        entries.append(
            {
                "caseId": f"orga-{a}-{b}",
                "graphTurtle": ORG_GRAPH_TURTLE,
                "startNode": start,
                "endNode": end,
                "goldPath": path,
            }
        )
    return {
        "schema": SCHEMA,
        "taskClassId": "RdfConnectionExplainStatic",
        "entries": entries,
    }


def build_fact_extract() -> dict:
    # sanity: the gold document must parse
    parse_graph(FACT_SHEET_GOLD_TURTLE, "turtle")
    return {
        "schema": SCHEMA,
        "taskClassId": "FactExtractStatic",
        "entries": [
            {
                "caseId": "nimbus-1",
                "factSheet": FACT_SHEET,
                "vocab": FACT_SHEET_VOCAB,
                "goldDocument": FACT_SHEET_GOLD_TURTLE,
            }
        ],
    }


def corrupt_query(query: str, kind: str, rng: random.Random) -> str | None:
    """One localized corruption of the given kind, or None if inapplicable."""
    if kind == "deleted_brace":
        positions = [i for i, c in enumerate(query) if c in "{}"]
        if not positions:
            return None
        pos = rng.choice(positions)
        return query[:pos] + query[pos + 1 :]
    if kind == "misspelled_keyword":
        for keyword, bad in (
            ("SELECT", "SELCT"),
            ("WHERE", "WHRE"),
            ("FILTER", "FITLER"),
            ("ORDER", "ODER"),
        ):
            idx = query.find(keyword)
            if idx >= 0:
                return query[:idx] + bad + query[idx + len(keyword) :]
        return None
    if kind == "missing_var_marker":
        positions = [i for i, c in enumerate(query) if c == "?"]
        if not positions:
            return None
        pos = rng.choice(positions)
        return query[:pos] + query[pos + 1 :]
    if kind == "unterminated_string":
        import re

        matches = list(re.finditer(r'"[^"\n]*"', query))
        if not matches:
            return None
        match = rng.choice(matches)
        return query[: match.end() - 1] + query[match.end() :]
    raise ValueError(f"unknown query corruption kind {kind!r}")


def _broken_query(query: str, case_index: int, rng: random.Random) -> tuple[str, str]:
    for offset in range(len(QUERY_CORRUPTION_KINDS)):
        kind = QUERY_CORRUPTION_KINDS[(case_index + offset) % len(QUERY_CORRUPTION_KINDS)]
        corrupted = corrupt_query(query, kind, rng)
        if corrupted is None:
            continue
        try:
            parse_select(corrupted)
        except SparqlParseError:
            return corrupted, kind
    raise RuntimeError(f"could not corrupt query: {query!r}")


def build_sparql_cases() -> dict:
    rng = random.Random(20240917)
    datasets = {}
    for name, (graph_turtle, pairs) in SPARQL_DATASETS.items():
        graph = parse_graph(graph_turtle, "turtle")
        cases = []
        for i, (question, gold_query) in enumerate(pairs):
            query = parse_select(gold_query)
            results = execute_select(query, graph)
            corrupted, kind = _broken_query(gold_query, i, rng)
            cases.append(
                {
                    "caseId": f"{name}-{i + 1}",
                    "question": question,
                    "goldQuery": gold_query,
                    "corruptedQuery": corrupted,
                    "corruptionKind": kind,
                    "goldResults": {
                        "variables": results.variables,
                        "rows": [
                            [term_to_json(row[v]) for v in results.variables]
                            for row in results.rows
                        ],
                    },
                }
            )
        datasets[name] = {"graphTurtle": graph_turtle, "cases": cases}
    return {"schema": SCHEMA, "taskClassId": "sparql-cases", "datasets": datasets}


CONTAINER_BUILDERS = {
    "rdf_syntax_fix": build_rdf_syntax_fix,
    "connection_explain": build_connection_explain,
    "fact_extract": build_fact_extract,
    "sparql_cases": build_sparql_cases,
}


def write_containers(out_dir: Path | None = None, passphrase: str | None = None) -> list[Path]:
    out = Path(out_dir) if out_dir is not None else files_dir()
    out.mkdir(parents=True, exist_ok=True)
    passphrase = passphrase or os.environ.get(TASKDATA_KEY_ENV) or DEV_PASSPHRASE
    written = []
    for name, builder in CONTAINER_BUILDERS.items():
        doc = builder()
        payload = json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
        plain_path = out / f"{name}.json"
        plain_path.write_text(payload, encoding="utf-8")
        enc_path = out / f"{name}.json.enc"
        enc_path.write_bytes(encrypt_task_data(payload.encode("utf-8"), passphrase))
        written.extend([plain_path, enc_path])
    return written


def main() -> int:
    written = write_containers()
    for path in written:
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
