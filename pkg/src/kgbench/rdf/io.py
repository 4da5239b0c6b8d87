"""Format dispatch for graph parsing and serialization."""

from __future__ import annotations

from .errors import ParseError, UnsupportedFormatError
from .jsonld import parse_jsonld, serialize_jsonld
from .model import RdfGraph
from .ntriples import parse_ntriples, serialize_ntriples
from .rdfxml import serialize_rdfxml
from .turtle import parse_turtle, serialize_turtle

GRAPH_FORMATS = ("turtle", "jsonld", "ntriples", "rdfxml")
PARSE_FORMATS = ("turtle", "jsonld", "ntriples")

# Info string to put after ``` in fenced code blocks, per format.
BLOCK_TAGS = {
    "turtle": "turtle",
    "jsonld": "json",
    "ntriples": "ntriples",
    "rdfxml": "xml",
}

_PARSERS = {
    "turtle": parse_turtle,
    "jsonld": parse_jsonld,
    "ntriples": parse_ntriples,
}

_SERIALIZERS = {
    "turtle": serialize_turtle,
    "jsonld": serialize_jsonld,
    "ntriples": serialize_ntriples,
    "rdfxml": serialize_rdfxml,
}


def check_format(fmt: str) -> str:
    if fmt not in GRAPH_FORMATS:
        raise UnsupportedFormatError(
            f"unknown graph format {fmt!r}; expected one of {', '.join(GRAPH_FORMATS)}"
        )
    return fmt


def parse_graph(text: str, fmt: str) -> RdfGraph:
    """Parse a document in the given format; raises ParseError on bad input.

    RDF/XML is serialization-only and raises UnsupportedFormatError.
    """
    check_format(fmt)
    parser = _PARSERS.get(fmt)
    if parser is None:
        raise UnsupportedFormatError(f"parsing {fmt!r} documents is not supported")
    return parser(text)


def serialize_graph(graph: RdfGraph, fmt: str) -> str:
    """Serialize deterministically in the given format (all four supported)."""
    check_format(fmt)
    return _SERIALIZERS[fmt](graph)


__all__ = [
    "GRAPH_FORMATS",
    "PARSE_FORMATS",
    "BLOCK_TAGS",
    "ParseError",
    "UnsupportedFormatError",
    "check_format",
    "parse_graph",
    "serialize_graph",
]
