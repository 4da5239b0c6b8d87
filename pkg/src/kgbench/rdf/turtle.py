"""Turtle parsing and deterministic serialization.

The parser covers the Turtle subset the benchmark documents use: @prefix and
SPARQL-style PREFIX directives, prefixed names, IRIs, blank node labels and
property lists, string/numeric/boolean literals with language tags or
datatypes, and the ``a`` / ``;`` / ``,`` shorthands. Collections and @base
are rejected with a positioned error. Error messages carry a 1-based line
number so they can be quoted in correction prompts.
"""

from __future__ import annotations

from typing import Optional

from .errors import ParseError
from .model import (
    RDF_TYPE,
    RdfGraph,
    RdfTerm,
    blank,
    iri,
    literal,
    shrink_iri,
)

_STRING_ESCAPES = {
    "t": "\t",
    "b": "\b",
    "n": "\n",
    "r": "\r",
    "f": "\f",
    '"': '"',
    "'": "'",
    "\\": "\\",
}

_EOS_MESSAGE = "Bad syntax (expected '.' or ';' or ',' at end of statement)"


class _Token:
    __slots__ = ("type", "value", "line", "col")

    def __init__(self, type_: str, value, line: int, col: int):
        self.type = type_
        self.value = value
        self.line = line
        self.col = col

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"Token({self.type}, {self.value!r}, {self.line}:{self.col})"


def _is_pn_char(c: str) -> bool:
    return c.isalnum() or c in "_-"


class _Tokenizer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str, line: int | None = None, col: int | None = None):
        raise ParseError(message, line or self.line, col or self.col)

    def _advance(self, n: int = 1) -> str:
        chunk = self.text[self.pos : self.pos + n]
        for c in chunk:
            if c == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n
        return chunk

    def _peek(self, offset: int = 0) -> str:
        idx = self.pos + offset
        return self.text[idx] if idx < len(self.text) else ""

    def _skip_ws_and_comments(self) -> None:
        while self.pos < len(self.text):
            c = self._peek()
            if c.isspace():
                self._advance()
            elif c == "#":
                while self.pos < len(self.text) and self._peek() != "\n":
                    self._advance()
            else:
                return

    def tokens(self) -> list[_Token]:
        out = []
        while True:
            tok = self.next_token()
            out.append(tok)
            if tok.type == "eof":
                return out

    def next_token(self) -> _Token:
        self._skip_ws_and_comments()
        line, col = self.line, self.col
        if self.pos >= len(self.text):
            return _Token("eof", None, line, col)
        c = self._peek()
        if c == "<":
            return self._read_iriref(line, col)
        if c in "\"'":
            return self._read_string(line, col)
        if c == "@":
            return self._read_at_word(line, col)
        if c == "^":
            if self._peek(1) == "^":
                self._advance(2)
                return _Token("^^", "^^", line, col)
            self.error("Bad syntax (lone '^')", line, col)
        if c in ".;,[]()":
            self._advance()
            return _Token(c, c, line, col)
        if c.isdigit() or (c in "+-" and (self._peek(1).isdigit() or self._peek(1) == ".")):
            return self._read_number(line, col)
        if c.isalpha() or c == "_" or c == ":":
            return self._read_name(line, col)
        self.error(f"Bad syntax (unexpected character {c!r})", line, col)
        raise AssertionError  # self.error always raises

    def _read_iriref(self, line, col) -> _Token:
        self._advance()  # <
        out = []
        while True:
            if self.pos >= len(self.text):
                self.error("Bad syntax (unterminated IRI, expected '>')", line, col)
            c = self._advance()
            if c == ">":
                return _Token("iriref", "".join(out), line, col)
            if c in " \n\t\r<\"{}|^`":
                self.error(f"Bad syntax (illegal character {c!r} inside IRI)", line, col)
            if c == "\\":
                out.append(self._read_unicode_escape(line))
            else:
                out.append(c)

    def _read_unicode_escape(self, start_line) -> str:
        if self.pos >= len(self.text):
            self.error("Bad syntax (unterminated escape sequence)", start_line)
        kind = self._advance()
        if kind == "u":
            digits = self._advance(4)
        elif kind == "U":
            digits = self._advance(8)
        else:
            self.error(f"Bad character escaping (illegal escape sequence '\\{kind}')")
        if len(digits) != (4 if kind == "u" else 8) or any(
            d not in "0123456789abcdefABCDEF" for d in digits
        ):
            self.error("Bad character escaping (malformed \\u escape)")
        return chr(int(digits, 16))

    def _read_string(self, line, col) -> _Token:
        quote = self._peek()
        if self.text.startswith(quote * 3, self.pos):
            return self._read_long_string(quote, line, col)
        self._advance()
        out = []
        while True:
            if self.pos >= len(self.text):
                self.error("Bad syntax (unterminated string literal)", line, col)
            c = self._advance()
            if c == quote:
                return _Token("string", "".join(out), line, col)
            if c == "\n":
                self.error("Bad syntax (newline in short string literal)", line, col)
            if c == "\\":
                if self.pos >= len(self.text):
                    self.error("Bad syntax (unterminated string literal)", line, col)
                e = self._peek()
                if e in _STRING_ESCAPES:
                    self._advance()
                    out.append(_STRING_ESCAPES[e])
                elif e in "uU":
                    self._advance()
                    out.append(self._read_unicode_escape(line))
                else:
                    self.error(f"Bad character escaping (illegal escape sequence '\\{e}' in string literal)")
            else:
                out.append(c)

    def _read_long_string(self, quote, line, col) -> _Token:
        self._advance(3)
        out = []
        while True:
            if self.pos >= len(self.text):
                self.error("Bad syntax (unterminated long string literal)", line, col)
            if self.text.startswith(quote * 3, self.pos):
                self._advance(3)
                return _Token("string", "".join(out), line, col)
            c = self._advance()
            if c == "\\":
                e = self._peek()
                if e in _STRING_ESCAPES:
                    self._advance()
                    out.append(_STRING_ESCAPES[e])
                elif e in "uU":
                    self._advance()
                    out.append(self._read_unicode_escape(line))
                else:
                    self.error(f"Bad character escaping (illegal escape sequence '\\{e}' in string literal)")
            else:
                out.append(c)

    def _read_at_word(self, line, col) -> _Token:
        self._advance()  # @
        word = []
        while self._peek().isalpha() or (word and self._peek() in "-0123456789"):
            word.append(self._advance())
        text = "".join(word)
        if text == "prefix":
            return _Token("@prefix", text, line, col)
        if text == "base":
            self.error("Bad syntax (@base is not supported)", line, col)
        if not text:
            self.error("Bad syntax (lone '@')", line, col)
        return _Token("langtag", text, line, col)

    def _read_number(self, line, col) -> _Token:
        out = []
        if self._peek() in "+-":
            out.append(self._advance())
        kind = "integer"
        while self._peek().isdigit():
            out.append(self._advance())
        if self._peek() == "." and self._peek(1).isdigit():
            kind = "decimal"
            out.append(self._advance())
            while self._peek().isdigit():
                out.append(self._advance())
        if self._peek() in "eE" and (
            self._peek(1).isdigit() or (self._peek(1) in "+-" and self._peek(2).isdigit())
        ):
            kind = "double"
            out.append(self._advance())
            if self._peek() in "+-":
                out.append(self._advance())
            while self._peek().isdigit():
                out.append(self._advance())
        text = "".join(out)
        if not any(ch.isdigit() for ch in text):
            self.error("Bad syntax (malformed number)", line, col)
        return _Token("number", (text, kind), line, col)

    def _read_name(self, line, col) -> _Token:
        # prefixed name, blank node label, bare keyword, or PNAME_NS
        start = self.pos
        prefix_chars = []
        while _is_pn_char(self._peek()) or self._peek() == ".":
            # dots are valid inside local names but not at the end; handled below
            if self._peek() == "." and not _is_pn_char(self._peek(1)) and self._peek(1) != ":":
                break
            prefix_chars.append(self._advance())
        word = "".join(prefix_chars)
        if self._peek() == ":":
            self._advance()
            if word.startswith("_") and word == "_":
                label_chars = []
                while _is_pn_char(self._peek()) or (
                    self._peek() == "." and _is_pn_char(self._peek(1))
                ):
                    label_chars.append(self._advance())
                label = "".join(label_chars)
                if not label:
                    self.error("Bad syntax (missing blank node label)", line, col)
                return _Token("blank", label, line, col)
            local_chars = []
            while _is_pn_char(self._peek()) or (
                self._peek() == "." and (_is_pn_char(self._peek(1)) or self._peek(1) == ".")
            ):
                local_chars.append(self._advance())
            return _Token("pname", (word, "".join(local_chars)), line, col)
        if word == "a":
            return _Token("a", "a", line, col)
        if word in ("true", "false"):
            return _Token("boolean", word, line, col)
        if word.upper() == "PREFIX":
            return _Token("PREFIX", word, line, col)
        if word.upper() == "BASE":
            self.error("Bad syntax (BASE is not supported)", line, col)
        self.error(f"Bad syntax (unexpected token {word!r})", line, col)
        raise AssertionError


class _TurtleParser:
    def __init__(self, text: str):
        self.tokens = _Tokenizer(text).tokens()
        self.idx = 0
        self.graph = RdfGraph()
        self._blank_counter = 0

    # token plumbing -------------------------------------------------
    def peek(self) -> _Token:
        return self.tokens[self.idx]

    def take(self) -> _Token:
        tok = self.tokens[self.idx]
        if tok.type != "eof":
            self.idx += 1
        return tok

    def prev(self) -> _Token:
        return self.tokens[max(0, self.idx - 1)]

    def error(self, message: str, tok: _Token | None = None):
        tok = tok or self.peek()
        raise ParseError(message, tok.line, tok.col)

    def error_after_prev(self, message: str):
        # report at the token *before* the unexpected one: this is where a
        # terminator was expected, matching how missing-dot errors are read
        prev = self.prev()
        raise ParseError(message, prev.line, prev.col)

    # grammar --------------------------------------------------------
    def parse(self) -> RdfGraph:
        while True:
            tok = self.peek()
            if tok.type == "eof":
                return self.graph
            if tok.type == "@prefix":
                self._parse_prefix(directive=True)
            elif tok.type == "PREFIX":
                self._parse_prefix(directive=False)
            else:
                self._parse_triples()

    def _parse_prefix(self, directive: bool) -> None:
        self.take()
        tok = self.take()
        if tok.type != "pname" or tok.value[1] != "":
            self.error("Bad syntax (expected prefix name ending with ':')", tok)
        prefix = tok.value[0]
        tok = self.take()
        if tok.type != "iriref":
            self.error("Bad syntax (expected IRI in prefix declaration)", tok)
        self.graph.bind(prefix, tok.value)
        if directive:
            if self.peek().type != ".":
                self.error_after_prev("Bad syntax (expected '.' after @prefix declaration)")
            self.take()

    def _parse_triples(self) -> None:
        subject = self._parse_term(position="subject")
        self._parse_predicate_object_list(subject, allow_empty=False)
        if self.peek().type != ".":
            self.error_after_prev(_EOS_MESSAGE)
        self.take()

    def _parse_predicate_object_list(self, subject: RdfTerm, allow_empty: bool) -> None:
        first = True
        while True:
            tok = self.peek()
            if not first or allow_empty:
                if tok.type in (".", "]", "eof"):
                    return
            predicate = self._parse_verb()
            self._parse_object_list(subject, predicate)
            first = False
            if self.peek().type == ";":
                while self.peek().type == ";":
                    self.take()
                continue
            return

    def _parse_verb(self) -> RdfTerm:
        tok = self.peek()
        if tok.type == "a":
            self.take()
            return iri(RDF_TYPE)
        term = self._parse_term(position="predicate")
        if not term.is_iri:
            self.error("Bad syntax (predicate must be an IRI)", tok)
        return term

    def _parse_object_list(self, subject: RdfTerm, predicate: RdfTerm) -> None:
        while True:
            obj = self._parse_term(position="object")
            self.graph.add(subject, predicate, obj)
            if self.peek().type == ",":
                self.take()
                continue
            return

    def _fresh_blank(self) -> RdfTerm:
        self._blank_counter += 1
        return blank(f"anon{self._blank_counter}")

    def _parse_term(self, position: str) -> RdfTerm:
        tok = self.take()
        if tok.type == "iriref":
            return iri(tok.value)
        if tok.type == "pname":
            prefix, local = tok.value
            ns = self.graph.prefixes.get(prefix)
            if ns is None:
                self.error(f"Undefined prefix \"{prefix}:\"", tok)
            return iri(ns + local)
        if tok.type == "blank":
            if position == "predicate":
                self.error("Bad syntax (blank node cannot be a predicate)", tok)
            return blank(tok.value)
        if tok.type == "[":
            if position == "predicate":
                self.error("Bad syntax (blank node cannot be a predicate)", tok)
            node = self._fresh_blank()
            self._parse_predicate_object_list(node, allow_empty=True)
            close = self.take()
            if close.type != "]":
                self.error("Bad syntax (expected ']' closing blank node property list)", close)
            return node
        if tok.type == "(":
            self.error("Bad syntax (collections are not supported)", tok)
        if tok.type == "string":
            if position != "object":
                self.error(f"Bad syntax (literal not allowed as {position})", tok)
            return self._finish_literal(tok.value)
        if tok.type == "number":
            if position != "object":
                self.error(f"Bad syntax (literal not allowed as {position})", tok)
            text, kind = tok.value
            from .model import XSD_DECIMAL, XSD_DOUBLE, XSD_INTEGER

            datatype = {
                "integer": XSD_INTEGER,
                "decimal": XSD_DECIMAL,
                "double": XSD_DOUBLE,
            }[kind]
            return literal(text, datatype=datatype)
        if tok.type == "boolean":
            if position != "object":
                self.error(f"Bad syntax (literal not allowed as {position})", tok)
            from .model import XSD_BOOLEAN

            return literal(tok.value, datatype=XSD_BOOLEAN)
        if tok.type == "eof":
            self.error_after_prev(_EOS_MESSAGE)
        self.error(f"Bad syntax (unexpected {tok.type!r} as {position})", tok)
        raise AssertionError

    def _finish_literal(self, value: str) -> RdfTerm:
        tok = self.peek()
        language: Optional[str] = None
        datatype: Optional[str] = None
        if tok.type == "langtag":
            self.take()
            language = tok.value
            if self.peek().type == "^^":
                self.error(
                    "Bad syntax (literal cannot carry both a language tag and a datatype)"
                )
        elif tok.type == "^^":
            self.take()
            dt = self.take()
            if dt.type == "iriref":
                datatype = dt.value
            elif dt.type == "pname":
                prefix, local = dt.value
                ns = self.graph.prefixes.get(prefix)
                if ns is None:
                    self.error(f"Undefined prefix \"{prefix}:\"", dt)
                datatype = ns + local
            else:
                self.error("Bad syntax (expected datatype IRI after '^^')", dt)
            if self.peek().type == "langtag":
                self.error(
                    "Bad syntax (literal cannot carry both a language tag and a datatype)"
                )
        return literal(value, language=language, datatype=datatype)


def parse_turtle(text: str) -> RdfGraph:
    """Parse a Turtle document; raises ParseError with a 1-based line."""
    return _TurtleParser(text).parse()


# serialization -------------------------------------------------------

def escape_string(value: str) -> str:
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


def render_term_turtle(term: RdfTerm, prefixes: dict[str, str]) -> str:
    if term.is_iri:
        if term.value == RDF_TYPE:
            return "a"
        short = shrink_iri(term.value, prefixes)
        return short if short is not None else f"<{term.value}>"
    if term.is_blank:
        return f"_:{term.value}"
    rendered = f'"{escape_string(term.value)}"'
    if term.language:
        return f"{rendered}@{term.language}"
    if term.datatype:
        short = shrink_iri(term.datatype, prefixes)
        dt = short if short is not None else f"<{term.datatype}>"
        return f"{rendered}^^{dt}"
    return rendered


def serialize_turtle(graph: RdfGraph) -> str:
    """Deterministic Turtle: prefixes, then triples grouped by subject.

    Subjects, predicates and objects are sorted by their rendered form;
    rdf:type renders as ``a``.
    """
    lines = []
    for prefix in sorted(graph.prefixes):
        lines.append(f"@prefix {prefix}: <{graph.prefixes[prefix]}> .")
    if graph.prefixes and graph.triples:
        lines.append("")
    by_subject: dict[str, dict[str, list[str]]] = {}
    for s, p, o in graph.triples:
        s_r = render_term_turtle(s, graph.prefixes)
        p_r = render_term_turtle(p, graph.prefixes)
        o_r = render_term_turtle(o, graph.prefixes)
        by_subject.setdefault(s_r, {}).setdefault(p_r, []).append(o_r)
    for s_r in sorted(by_subject):
        pred_map = by_subject[s_r]
        parts = []
        for p_r in sorted(pred_map):
            objs = ", ".join(sorted(pred_map[p_r]))
            parts.append(f"{p_r} {objs}")
        statement = f"{s_r} " + " ;\n    ".join(parts) + " ."
        lines.append(statement)
    return "\n".join(lines) + ("\n" if lines else "")
