"""RDF toolkit: data model, format parsers/serializers, comparison, corruption."""

from .compare import is_isomorphic, normalize_term, triple_f1
from .corrupt import ERROR_KINDS, Corruption, CorruptionError, inject_syntax_errors
from .errors import ParseError, UnsupportedFormatError
from .io import (
    BLOCK_TAGS,
    GRAPH_FORMATS,
    PARSE_FORMATS,
    check_format,
    parse_graph,
    serialize_graph,
)
from .model import (
    FOAF_NS,
    RDF_NS,
    RDF_TYPE,
    XSD_NS,
    RdfGraph,
    RdfTerm,
    blank,
    expand_prefixed,
    iri,
    literal,
    shrink_iri,
)
from .ntriples import render_term_ntriples

__all__ = [
    "BLOCK_TAGS",
    "Corruption",
    "CorruptionError",
    "ERROR_KINDS",
    "FOAF_NS",
    "GRAPH_FORMATS",
    "PARSE_FORMATS",
    "ParseError",
    "RDF_NS",
    "RDF_TYPE",
    "RdfGraph",
    "RdfTerm",
    "UnsupportedFormatError",
    "XSD_NS",
    "blank",
    "check_format",
    "expand_prefixed",
    "inject_syntax_errors",
    "iri",
    "is_isomorphic",
    "literal",
    "normalize_term",
    "parse_graph",
    "render_term_ntriples",
    "serialize_graph",
    "shrink_iri",
    "triple_f1",
]
