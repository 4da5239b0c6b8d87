"""RDF/XML serialization (emit-only), element-per-property style.

Parsing RDF/XML is intentionally unsupported; the format is only needed to
present graphs inside prompts.
"""

from __future__ import annotations

from xml.sax.saxutils import escape, quoteattr

from .model import RDF_NS, RdfGraph, RdfTerm


def _split_iri(value: str) -> tuple[str, str]:
    """Split an IRI into (namespace, XML-name-safe local part)."""
    for i in range(len(value) - 1, -1, -1):
        if value[i] in "#/":
            local = value[i + 1 :]
            if local and _xml_name_ok(local):
                return value[: i + 1], local
            break
    return "", ""


def _xml_name_ok(name: str) -> bool:
    if not name:
        return False
    if not (name[0].isalpha() or name[0] == "_"):
        return False
    return all(c.isalnum() or c in "_-." for c in name)


def _xml_prefix_ok(prefix: str) -> bool:
    if not prefix or prefix.lower().startswith("xml"):
        return False
    return _xml_name_ok(prefix)


def serialize_rdfxml(graph: RdfGraph) -> str:
    """Deterministic RDF/XML with one rdf:Description per subject."""
    ns_to_prefix: dict[str, str] = {RDF_NS: "rdf"}
    for prefix, ns in sorted(graph.prefixes.items()):
        if ns not in ns_to_prefix and prefix != "rdf" and _xml_prefix_ok(prefix):
            ns_to_prefix[ns] = prefix
    synthetic = 0

    def prefix_for(ns: str) -> str:
        nonlocal synthetic
        if ns not in ns_to_prefix:
            synthetic += 1
            ns_to_prefix[ns] = f"ns{synthetic}"
        return ns_to_prefix[ns]

    by_subject: dict[RdfTerm, list] = {}
    for s, p, o in graph.triples:
        by_subject.setdefault(s, []).append((p, o))

    def subject_key(term: RdfTerm) -> str:
        return ("_:" + term.value) if term.is_blank else term.value

    body_lines: list[str] = []
    for s in sorted(by_subject, key=subject_key):
        if s.is_blank:
            opening = f"  <rdf:Description rdf:nodeID={quoteattr(s.value)}>"
        else:
            opening = f"  <rdf:Description rdf:about={quoteattr(s.value)}>"
        prop_lines = []
        for p, o in by_subject[s]:
            ns, local = _split_iri(p.value)
            if not local:
                raise ValueError(
                    f"predicate IRI {p.value!r} has no XML-name-safe local part"
                )
            qname = f"{prefix_for(ns)}:{local}"
            if o.is_iri:
                prop_lines.append(f"    <{qname} rdf:resource={quoteattr(o.value)}/>")
            elif o.is_blank:
                prop_lines.append(f"    <{qname} rdf:nodeID={quoteattr(o.value)}/>")
            else:
                attrs = ""
                if o.language:
                    attrs = f" xml:lang={quoteattr(o.language)}"
                elif o.datatype:
                    attrs = f" rdf:datatype={quoteattr(o.datatype)}"
                prop_lines.append(f"    <{qname}{attrs}>{escape(o.value)}</{qname}>")
        body_lines.append(opening)
        body_lines.extend(sorted(prop_lines))
        body_lines.append("  </rdf:Description>")

    xmlns_attrs = "".join(
        f"\n    xmlns:{prefix}={quoteattr(ns)}"
        for ns, prefix in sorted(ns_to_prefix.items(), key=lambda kv: kv[1])
    )
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f"<rdf:RDF{xmlns_attrs}>",
        *body_lines,
        "</rdf:RDF>",
    ]
    return "\n".join(lines) + "\n"
