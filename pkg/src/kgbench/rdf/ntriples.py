"""N-Triples parsing and deterministic (sorted, canonical) serialization."""

from __future__ import annotations

from .errors import ParseError
from .model import RdfGraph, RdfTerm, blank, iri, literal

_ESCAPES = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}


class _LineScanner:
    def __init__(self, line: str, line_no: int):
        self.line = line
        self.pos = 0
        self.line_no = line_no

    def error(self, message: str):
        raise ParseError(message, self.line_no, self.pos + 1)

    def skip_ws(self) -> None:
        while self.pos < len(self.line) and self.line[self.pos] in " \t":
            self.pos += 1

    def peek(self, offset: int = 0) -> str:
        idx = self.pos + offset
        return self.line[idx] if idx < len(self.line) else ""

    def take(self) -> str:
        c = self.peek()
        self.pos += 1
        return c

    def at_end(self) -> bool:
        return self.pos >= len(self.line)

    def read_term(self, position: str) -> RdfTerm:
        self.skip_ws()
        c = self.peek()
        if c == "<":
            return iri(self._read_iriref())
        if c == "_":
            if self.peek(1) != ":":
                self.error("Bad syntax (expected ':' after '_' in blank node label)")
            self.pos += 2
            start = self.pos
            while self.peek().isalnum() or self.peek() in "_-":
                self.pos += 1
            if self.pos == start:
                self.error("Bad syntax (missing blank node label)")
            return blank(self.line[start : self.pos])
        if c == '"':
            if position != "object":
                self.error(f"Bad syntax (literal not allowed as {position})")
            return self._read_literal()
        if c == "":
            self.error(f"Bad syntax (missing {position} term)")
        self.error(f"Bad syntax (unexpected character {c!r}, expected {position} term)")
        raise AssertionError

    def _read_iriref(self) -> str:
        self.take()  # <
        out = []
        while True:
            if self.at_end():
                self.error("Bad syntax (unterminated IRI, expected '>')")
            c = self.take()
            if c == ">":
                return "".join(out)
            if c in ' "<{}|^`':
                self.error(f"Bad syntax (illegal character {c!r} inside IRI)")
            if c == "\\":
                out.append(self._read_unicode_escape())
            else:
                out.append(c)

    def _read_unicode_escape(self) -> str:
        kind = self.take()
        if kind not in "uU":
            self.error(f"Bad character escaping (illegal escape sequence '\\{kind}')")
        n = 4 if kind == "u" else 8
        digits = self.line[self.pos : self.pos + n]
        if len(digits) != n or any(d not in "0123456789abcdefABCDEF" for d in digits):
            self.error("Bad character escaping (malformed \\u escape)")
        self.pos += n
        return chr(int(digits, 16))

    def _read_literal(self) -> RdfTerm:
        self.take()  # opening quote
        out = []
        while True:
            if self.at_end():
                self.error("Bad syntax (unterminated string literal)")
            c = self.take()
            if c == '"':
                break
            if c == "\\":
                e = self.peek()
                if e in _ESCAPES:
                    self.pos += 1
                    out.append(_ESCAPES[e])
                elif e in "uU":
                    out.append(self._read_unicode_escape())
                else:
                    self.error(
                        f"Bad character escaping (illegal escape sequence '\\{e}' in string literal)"
                    )
            else:
                out.append(c)
        value = "".join(out)
        language = None
        datatype = None
        if self.peek() == "@":
            self.take()
            start = self.pos
            while self.peek().isalnum() or self.peek() == "-":
                self.pos += 1
            language = self.line[start : self.pos]
            if not language:
                self.error("Bad syntax (empty language tag)")
        if self.peek() == "^" and self.peek(1) == "^":
            if language is not None:
                self.error(
                    "Bad syntax (literal cannot carry both a language tag and a datatype)"
                )
            self.pos += 2
            if self.peek() != "<":
                self.error("Bad syntax (expected datatype IRI after '^^')")
            datatype = self._read_iriref()
        return literal(value, language=language, datatype=datatype)


def parse_ntriples(text: str) -> RdfGraph:
    """Parse an N-Triples document; raises ParseError with a 1-based line."""
    graph = RdfGraph()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        scanner = _LineScanner(raw, line_no)
        s = scanner.read_term("subject")
        p = scanner.read_term("predicate")
        if not p.is_iri:
            scanner.error("Bad syntax (predicate must be an IRI)")
        o = scanner.read_term("object")
        scanner.skip_ws()
        if scanner.peek() != ".":
            scanner.error("Bad syntax (expected '.' at end of statement)")
        scanner.take()
        scanner.skip_ws()
        if not scanner.at_end() and scanner.peek() != "#":
            scanner.error("Bad syntax (trailing characters after '.')")
        graph.add(s, p, o)
    return graph


def _escape(value: str) -> str:
    out = []
    for c in value:
        if c == "\\":
            out.append("\\\\")
        elif c == '"':
            out.append('\\"')
        elif c == "\n":
            out.append("\\n")
        elif c == "\r":
            out.append("\\r")
        elif c == "\t":
            out.append("\\t")
        elif ord(c) < 0x20:
            out.append(f"\\u{ord(c):04X}")
        else:
            out.append(c)
    return "".join(out)


def render_term_ntriples(term: RdfTerm) -> str:
    """Canonical N-Triples rendering, also used as the sort/compare form."""
    if term.is_iri:
        return f"<{term.value}>"
    if term.is_blank:
        return f"_:{term.value}"
    rendered = f'"{_escape(term.value)}"'
    if term.language:
        return f"{rendered}@{term.language}"
    if term.datatype:
        return f"{rendered}^^<{term.datatype}>"
    return rendered


def serialize_ntriples(graph: RdfGraph) -> str:
    lines = sorted(
        f"{render_term_ntriples(s)} {render_term_ntriples(p)} {render_term_ntriples(o)} ."
        for s, p, o in graph.triples
    )
    return "\n".join(lines) + ("\n" if lines else "")
