"""Core RDF data model: terms, triples, graphs.

Graphs are plain in-memory sets of triples plus a prefix map. Blank node
labels only have identity within one graph; cross-graph comparison goes
through :mod:`kgbench.rdf.compare`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

RDF_NS = "http://www.w3.org/1999/02/22-rdf-syntax-ns#"
RDFS_NS = "http://www.w3.org/2000/01/rdf-schema#"
XSD_NS = "http://www.w3.org/2001/XMLSchema#"
FOAF_NS = "http://xmlns.com/foaf/0.1/"

RDF_TYPE = RDF_NS + "type"
RDF_LANGSTRING = RDF_NS + "langString"
XSD_STRING = XSD_NS + "string"
XSD_INTEGER = XSD_NS + "integer"
XSD_DECIMAL = XSD_NS + "decimal"
XSD_DOUBLE = XSD_NS + "double"
XSD_BOOLEAN = XSD_NS + "boolean"


class RdfModelError(ValueError):
    """Raised when a term or triple violates the RDF data model."""


@dataclass(frozen=True)
class RdfTerm:
    """One RDF term: IRI, blank node, or literal.

    For literals ``value`` is the lexical form. A language-tagged literal
    carries ``language`` and no explicit datatype (the language-string
    datatype is implied); a typed literal carries ``datatype``; a plain
    literal carries neither.
    """

    kind: str  # "iri" | "blank" | "literal"
    value: str
    language: Optional[str] = None
    datatype: Optional[str] = None

    def __post_init__(self) -> None:
        if self.kind not in ("iri", "blank", "literal"):
            raise RdfModelError(f"unknown term kind {self.kind!r}")
        if self.kind != "literal":
            if self.language is not None or self.datatype is not None:
                raise RdfModelError("only literals carry language or datatype")
        elif self.language is not None and self.datatype is not None:
            raise RdfModelError("literal cannot combine language tag and datatype")

    @property
    def is_iri(self) -> bool:
        return self.kind == "iri"

    @property
    def is_blank(self) -> bool:
        return self.kind == "blank"

    @property
    def is_literal(self) -> bool:
        return self.kind == "literal"


def iri(value: str) -> RdfTerm:
    return RdfTerm("iri", value)


def blank(label: str) -> RdfTerm:
    return RdfTerm("blank", label)


def literal(value: str, language: str | None = None, datatype: str | None = None) -> RdfTerm:
    # The language-string datatype is implied by the tag; store it implicitly.
    if language is not None and datatype == RDF_LANGSTRING:
        datatype = None
    return RdfTerm("literal", value, language, datatype)


Triple = tuple[RdfTerm, RdfTerm, RdfTerm]


def _check_triple(t: Triple) -> Triple:
    s, p, o = t
    if s.is_literal:
        raise RdfModelError("triple subject must be an IRI or blank node")
    if not p.is_iri:
        raise RdfModelError("triple predicate must be an IRI")
    return t


@dataclass
class RdfGraph:
    """A set of triples with a prefix map (set semantics, no duplicates)."""

    triples: set[Triple] = field(default_factory=set)
    prefixes: dict[str, str] = field(default_factory=dict)

    def add(self, s: RdfTerm, p: RdfTerm, o: RdfTerm) -> None:
        self.triples.add(_check_triple((s, p, o)))

    def add_triples(self, triples: Iterable[Triple]) -> None:
        for t in triples:
            self.triples.add(_check_triple(t))

    def bind(self, prefix: str, namespace: str) -> None:
        self.prefixes[prefix] = namespace

    def __len__(self) -> int:
        return len(self.triples)

    def __iter__(self) -> Iterator[Triple]:
        return iter(self.triples)

    def __contains__(self, t: Triple) -> bool:
        return t in self.triples

    def subjects(self) -> set[RdfTerm]:
        return {s for s, _, _ in self.triples}

    def objects_of(self, subject: RdfTerm, predicate: RdfTerm) -> set[RdfTerm]:
        return {o for s, p, o in self.triples if s == subject and p == predicate}

    def blank_labels(self) -> set[str]:
        labels = set()
        for s, _, o in self.triples:
            if s.is_blank:
                labels.add(s.value)
            if o.is_blank:
                labels.add(o.value)
        return labels

    def terms(self) -> set[RdfTerm]:
        out: set[RdfTerm] = set()
        for s, p, o in self.triples:
            out.update((s, p, o))
        return out

    def copy(self) -> "RdfGraph":
        return RdfGraph(set(self.triples), dict(self.prefixes))


def term_to_json(term: RdfTerm) -> dict:
    doc = {"kind": term.kind, "value": term.value}
    if term.language is not None:
        doc["language"] = term.language
    if term.datatype is not None:
        doc["datatype"] = term.datatype
    return doc


def term_from_json(doc: dict) -> RdfTerm:
    return RdfTerm(
        doc["kind"],
        doc["value"],
        doc.get("language"),
        doc.get("datatype"),
    )


def shrink_iri(value: str, prefixes: dict[str, str]) -> Optional[str]:
    """Render an IRI as prefix:local if a declared prefix covers it.

    Longest matching namespace wins; the local part must be a safe prefixed
    name (no characters that would need escaping).
    """
    best: Optional[tuple[str, str]] = None
    for prefix, ns in prefixes.items():
        if value.startswith(ns) and (best is None or len(ns) > len(best[1])):
            best = (prefix, ns)
    if best is None:
        return None
    local = value[len(best[1]):]
    if local and not _pn_local_ok(local):
        return None
    return f"{best[0]}:{local}"


def expand_prefixed(name: str, prefixes: dict[str, str]) -> Optional[str]:
    """Expand prefix:local against the prefix map; None if prefix unknown."""
    if ":" not in name:
        return None
    prefix, local = name.split(":", 1)
    ns = prefixes.get(prefix)
    if ns is None:
        return None
    return ns + local


def _pn_local_ok(local: str) -> bool:
    if not local:
        return False
    ok_mid = lambda c: c.isalnum() or c in "_-."
    if not (local[0].isalpha() or local[0] == "_" or local[0].isdigit()):
        return False
    if not all(ok_mid(c) for c in local):
        return False
    return not local.endswith(".")
