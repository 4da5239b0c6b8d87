"""JSON-LD parsing and serialization, constrained profile.

Supported: a top-level ``@context`` holding prefix/term to IRI mappings,
node objects with ``@id``/``@type``, literal objects with
``@value``/``@language``/``@type``, arrays of node objects, and a top-level
``@graph`` array. No remote contexts, no ``@base``, no nested context
redefinition. Unknown prefixes are rejected rather than passed through.
"""

from __future__ import annotations

import json
from typing import Any, Optional

from .errors import ParseError
from .model import (
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DOUBLE,
    XSD_INTEGER,
    RdfGraph,
    RdfTerm,
    blank,
    iri,
    literal,
    shrink_iri,
)


class _JsonLdReader:
    def __init__(self, text: str):
        self.text = text
        self.graph = RdfGraph()
        self._blank_counter = 0

    def _line_of(self, needle: str) -> int:
        """Best-effort line number of a token in the raw document."""
        idx = self.text.find(needle)
        if idx < 0:
            return 1
        return self.text.count("\n", 0, idx) + 1

    def error(self, message: str, needle: str | None = None):
        raise ParseError(message, self._line_of(needle) if needle else 1)

    def _fresh_blank(self) -> RdfTerm:
        self._blank_counter += 1
        return blank(f"anon{self._blank_counter}")

    def parse(self) -> RdfGraph:
        try:
            doc = json.loads(self.text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"Bad JSON syntax ({exc.msg})", exc.lineno, exc.colno) from exc
        nodes: list
        if isinstance(doc, list):
            nodes = doc
        elif isinstance(doc, dict):
            context = doc.get("@context", {})
            if not isinstance(context, dict):
                self.error("@context must be a JSON object", "@context")
            for key, value in context.items():
                if not isinstance(value, str):
                    self.error(f"context entry {key!r} must map to an IRI string", key)
                self.graph.bind(key, value)
            if "@graph" in doc:
                nodes = doc["@graph"]
                if not isinstance(nodes, list):
                    self.error("@graph must be an array", "@graph")
            else:
                remaining = {k: v for k, v in doc.items() if k != "@context"}
                nodes = [remaining] if remaining else []
        else:
            self.error("top-level JSON-LD value must be an object or array")
            raise AssertionError
        for node in nodes:
            self._read_node(node)
        return self.graph

    # IRI resolution ---------------------------------------------------
    def _resolve_iri(self, name: str, role: str) -> str:
        if name.startswith("_:"):
            self.error(f"blank node label not allowed as {role}", name)
        if "://" in name:
            return name
        if ":" in name:
            prefix, local = name.split(":", 1)
            ns = self.graph.prefixes.get(prefix)
            if ns is None:
                self.error(f"Undefined prefix \"{prefix}:\"", name)
            return ns + local
        term = self.graph.prefixes.get(name)
        if term is not None:
            return term
        self.error(f"cannot resolve {name!r} to an IRI (no such term in @context)", name)
        raise AssertionError

    def _node_id(self, node: dict) -> RdfTerm:
        node_id = node.get("@id")
        if node_id is None:
            return self._fresh_blank()
        if not isinstance(node_id, str):
            self.error("@id must be a string", "@id")
        if node_id.startswith("_:"):
            return blank(node_id[2:])
        return iri(self._resolve_iri(node_id, "@id"))

    # node / value handling --------------------------------------------
    def _read_node(self, node: Any, subject: RdfTerm | None = None) -> RdfTerm:
        if not isinstance(node, dict):
            self.error("node object expected")
        if "@value" in node:
            self.error("literal object used where a node object is required", "@value")
        subj = subject if subject is not None else self._node_id(node)
        types = node.get("@type", [])
        if isinstance(types, str):
            types = [types]
        if not isinstance(types, list):
            self.error("@type must be a string or array of strings", "@type")
        for t in types:
            if not isinstance(t, str):
                self.error("@type entries must be strings", "@type")
            self.graph.add(subj, iri(RDF_TYPE), iri(self._resolve_iri(t, "@type")))
        for key, value in node.items():
            if key in ("@id", "@type", "@context"):
                if key == "@context":
                    self.error("nested @context is not supported", "@context")
                continue
            if key.startswith("@"):
                self.error(f"unsupported keyword {key!r}", key)
            predicate = iri(self._resolve_iri(key, "property key"))
            values = value if isinstance(value, list) else [value]
            for v in values:
                self.graph.add(subj, predicate, self._read_value(v))
        return subj

    def _read_value(self, value: Any) -> RdfTerm:
        if isinstance(value, str):
            return literal(value)
        if isinstance(value, bool):
            return literal("true" if value else "false", datatype=XSD_BOOLEAN)
        if isinstance(value, int):
            return literal(str(value), datatype=XSD_INTEGER)
        if isinstance(value, float):
            return literal(repr(value), datatype=XSD_DOUBLE)
        if isinstance(value, dict):
            if "@value" in value:
                return self._read_literal_object(value)
            return self._read_node(value)
        self.error("unsupported JSON-LD value")
        raise AssertionError

    def _read_literal_object(self, obj: dict) -> RdfTerm:
        val = obj["@value"]
        language: Optional[str] = None
        datatype: Optional[str] = None
        for key in obj:
            if key not in ("@value", "@language", "@type"):
                self.error(f"unsupported key {key!r} in literal object", key)
        if "@language" in obj and "@type" in obj:
            self.error(
                "literal cannot carry both a language tag (@language) and a datatype (@type)",
                "@language",
            )
        if "@language" in obj:
            language = obj["@language"]
            if not isinstance(language, str) or not language:
                self.error("@language must be a non-empty string", "@language")
        if "@type" in obj:
            dt = obj["@type"]
            if not isinstance(dt, str):
                self.error("@type in a literal object must be a string", "@type")
            datatype = self._resolve_iri(dt, "literal datatype")
        if isinstance(val, bool):
            val = "true" if val else "false"
            datatype = datatype or XSD_BOOLEAN
        elif isinstance(val, int):
            val = str(val)
            datatype = datatype or XSD_INTEGER
        elif isinstance(val, float):
            val = repr(val)
            datatype = datatype or XSD_DOUBLE
        elif not isinstance(val, str):
            self.error("@value must be a string, number or boolean", "@value")
        return literal(val, language=language, datatype=datatype)


def parse_jsonld(text: str) -> RdfGraph:
    """Parse a JSON-LD document (constrained profile); raises ParseError."""
    return _JsonLdReader(text).parse()


# serialization -------------------------------------------------------

def _compact(value: str, prefixes: dict[str, str]) -> str:
    short = shrink_iri(value, prefixes)
    return short if short is not None else value


def _literal_json(term: RdfTerm, prefixes: dict[str, str]) -> Any:
    if term.language:
        return {"@language": term.language, "@value": term.value}
    if term.datatype:
        return {"@type": _compact(term.datatype, prefixes), "@value": term.value}
    return term.value


def _object_json(term: RdfTerm, prefixes: dict[str, str]) -> Any:
    if term.is_iri:
        return {"@id": _compact(term.value, prefixes)}
    if term.is_blank:
        return {"@id": f"_:{term.value}"}
    return _literal_json(term, prefixes)


def serialize_jsonld(graph: RdfGraph) -> str:
    """Deterministic JSON-LD: @context + @graph, sorted keys throughout."""
    sort_key = json.dumps
    nodes = []
    by_subject: dict[RdfTerm, list] = {}
    for s, p, o in graph.triples:
        by_subject.setdefault(s, []).append((p, o))
    subj_ids = {
        s: (f"_:{s.value}" if s.is_blank else _compact(s.value, graph.prefixes))
        for s in by_subject
    }
    for s in sorted(by_subject, key=lambda t: subj_ids[t]):
        node: dict[str, Any] = {"@id": subj_ids[s]}
        types = []
        props: dict[str, list] = {}
        for p, o in by_subject[s]:
            if p.value == RDF_TYPE and o.is_iri:
                types.append(_compact(o.value, graph.prefixes))
            else:
                key = _compact(p.value, graph.prefixes)
                props.setdefault(key, []).append(_object_json(o, graph.prefixes))
        if types:
            types.sort()
            node["@type"] = types[0] if len(types) == 1 else types
        for key in sorted(props):
            values = sorted(props[key], key=sort_key)
            node[key] = values[0] if len(values) == 1 else values
        nodes.append(node)
    doc: dict[str, Any] = {}
    if graph.prefixes:
        doc["@context"] = dict(sorted(graph.prefixes.items()))
    doc["@graph"] = nodes
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
