"""Recursive-descent parser for the SPARQL SELECT subset.

Every input either yields a SelectQuery or a SparqlParseError positioned as
"at line N, column M: MESSAGE" for embedding in correction prompts.
"""

from __future__ import annotations

from ..rdf.model import (
    RDF_TYPE,
    XSD_BOOLEAN,
    XSD_DECIMAL,
    XSD_DOUBLE,
    XSD_INTEGER,
    RdfTerm,
    blank,
    iri,
    literal,
)
from .ast import BoolExpr, Comparison, OrderKey, SelectQuery, Var

_KEYWORDS = {
    "PREFIX",
    "SELECT",
    "DISTINCT",
    "WHERE",
    "FILTER",
    "ORDER",
    "BY",
    "ASC",
    "DESC",
    "LIMIT",
    "OFFSET",
}

_UNSUPPORTED_KEYWORDS = {
    "OPTIONAL",
    "UNION",
    "GROUP",
    "HAVING",
    "MINUS",
    "BIND",
    "VALUES",
    "CONSTRUCT",
    "ASK",
    "DESCRIBE",
    "SERVICE",
    "GRAPH",
    "REDUCED",
    "BASE",
    "INSERT",
    "DELETE",
}


class SparqlParseError(Exception):
    """Positioned SPARQL syntax error."""

    def __init__(self, message: str, line: int, column: int):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self.prompt_text())

    def prompt_text(self) -> str:
        return f"at line {self.line}, column {self.column}: {self.message}"


class _Token:
    __slots__ = ("type", "value", "line", "col")

    def __init__(self, type_, value, line, col):
        self.type = type_
        self.value = value
        self.line = line
        self.col = col


class _Lexer:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message, line=None, col=None):
        raise SparqlParseError(message, line or self.line, col or self.col)

    def _advance(self, n=1) -> str:
        chunk = self.text[self.pos : self.pos + n]
        for c in chunk:
            if c == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
        self.pos += n
        return chunk

    def _peek(self, offset=0) -> str:
        idx = self.pos + offset
        return self.text[idx] if idx < len(self.text) else ""

    def tokens(self) -> list[_Token]:
        out = []
        while True:
            self._skip_ws()
            line, col = self.line, self.col
            if self.pos >= len(self.text):
                out.append(_Token("eof", None, line, col))
                return out
            c = self._peek()
            if c == "?" or c == "$":
                self._advance()
                name = self._read_while(lambda ch: ch.isalnum() or ch == "_")
                if not name:
                    self.error("variable marker without a name", line, col)
                out.append(_Token("var", name, line, col))
            elif c == "<":
                # '<' starts an IRI unless what follows reads as a comparison
                nxt = self._peek(1)
                if nxt == "" or nxt.isspace() or nxt.isdigit() or nxt in "=?+-$":
                    self._advance()
                    out.append(_Token("op", "<", line, col))
                else:
                    out.append(_Token("iriref", self._read_iriref(line, col), line, col))
            elif c in "\"'":
                out.append(_Token("string", self._read_string(c, line, col), line, col))
            elif c.isdigit() or (c in "+-" and (self._peek(1).isdigit() or self._peek(1) == ".")):
                out.append(self._read_number(line, col))
            elif c in "{}().,;*":
                self._advance()
                out.append(_Token(c, c, line, col))
            elif c == "=":
                self._advance()
                out.append(_Token("op", "=", line, col))
            elif c == "!":
                self._advance()
                if self._peek() != "=":
                    self.error("expected '=' after '!'", line, col)
                self._advance()
                out.append(_Token("op", "!=", line, col))
            elif c == ">":
                self._advance()
                out.append(_Token("op", ">", line, col))
            elif c == "&":
                self._advance()
                if self._peek() != "&":
                    self.error("expected '&&'", line, col)
                self._advance()
                out.append(_Token("bool", "&&", line, col))
            elif c == "|":
                self._advance()
                if self._peek() != "|":
                    self.error("expected '||'", line, col)
                self._advance()
                out.append(_Token("bool", "||", line, col))
            elif c == "^":
                if self._peek(1) == "^":
                    self._advance(2)
                    out.append(_Token("^^", "^^", line, col))
                else:
                    self.error("lone '^'", line, col)
            elif c == "@":
                self._advance()
                tag = self._read_while(lambda ch: ch.isalnum() or ch == "-")
                if not tag:
                    self.error("empty language tag", line, col)
                out.append(_Token("langtag", tag, line, col))
            elif c == "#":
                while self.pos < len(self.text) and self._peek() != "\n":
                    self._advance()
            elif c.isalpha() or c == "_" or c == ":":
                out.append(self._read_word(line, col))
            else:
                self.error(f"unexpected character {c!r}", line, col)

    def _skip_ws(self):
        while self.pos < len(self.text):
            if self._peek().isspace():
                self._advance()
            elif self._peek() == "#":
                while self.pos < len(self.text) and self._peek() != "\n":
                    self._advance()
            else:
                return

    def _read_while(self, pred) -> str:
        out = []
        while self.pos < len(self.text) and pred(self._peek()):
            out.append(self._advance())
        return "".join(out)

    def _read_iriref(self, line, col) -> str:
        self._advance()  # <
        out = []
        while True:
            if self.pos >= len(self.text):
                self.error("unterminated IRI (expected '>')", line, col)
            c = self._advance()
            if c == ">":
                return "".join(out)
            if c.isspace() or c in '"{}|^`':
                self.error(f"illegal character {c!r} inside IRI", line, col)
            out.append(c)

    def _read_string(self, quote, line, col) -> str:
        self._advance()
        out = []
        while True:
            if self.pos >= len(self.text):
                self.error("unterminated string literal", line, col)
            c = self._advance()
            if c == quote:
                return "".join(out)
            if c == "\n":
                self.error("unterminated string literal (newline reached)", line, col)
            if c == "\\":
                e = self._advance()
                mapping = {"t": "\t", "n": "\n", "r": "\r", '"': '"', "'": "'", "\\": "\\"}
                if e not in mapping:
                    self.error(f"illegal escape sequence '\\{e}' in string", line, col)
                out.append(mapping[e])
            else:
                out.append(c)

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
        return _Token("number", ("".join(out), kind), line, col)

    def _read_word(self, line, col) -> _Token:
        word = self._read_while(lambda ch: ch.isalnum() or ch in "_-")
        if self._peek() == ":":
            self._advance()
            local = self._read_while(lambda ch: ch.isalnum() or ch in "_-.")
            while local.endswith("."):
                # trailing dot is the statement terminator, not the local name
                local = local[:-1]
                self.pos -= 1
                self.col -= 1
            return _Token("pname", (word, local), line, col)
        upper = word.upper()
        if upper in _KEYWORDS:
            return _Token("keyword", upper, line, col)
        if upper in _UNSUPPORTED_KEYWORDS:
            self.error(f"'{word}' is not supported in this SELECT subset", line, col)
        if word == "a":
            return _Token("a", "a", line, col)
        if word in ("true", "false"):
            return _Token("boolean", word, line, col)
        self.error(f"unexpected token {word!r}", line, col)
        raise AssertionError


class _Parser:
    def __init__(self, text: str):
        self.tokens = _Lexer(text).tokens()
        self.idx = 0
        self.prefixes: dict[str, str] = {}

    def peek(self) -> _Token:
        return self.tokens[self.idx]

    def take(self) -> _Token:
        tok = self.tokens[self.idx]
        if tok.type != "eof":
            self.idx += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise SparqlParseError(message, tok.line, tok.col)

    def expect(self, type_, message) -> _Token:
        tok = self.peek()
        if tok.type != type_:
            self.error(message, tok)
        return self.take()

    def expect_keyword(self, word) -> _Token:
        tok = self.peek()
        if tok.type != "keyword" or tok.value != word:
            self.error(f"expected {word}", tok)
        return self.take()

    # grammar ---------------------------------------------------------
    def parse(self) -> SelectQuery:
        query = SelectQuery()
        while self.peek().type == "keyword" and self.peek().value == "PREFIX":
            self.take()
            name = self.expect("pname", "expected prefix name ending with ':'")
            prefix, local = name.value
            if local:
                self.error("prefix declaration must end with ':'", name)
            iri_tok = self.expect("iriref", "expected IRI in PREFIX declaration")
            self.prefixes[prefix] = iri_tok.value
        query.prefixes = dict(self.prefixes)

        self.expect_keyword("SELECT")
        if self.peek().type == "keyword" and self.peek().value == "DISTINCT":
            self.take()
            query.distinct = True
        if self.peek().type == "*":
            self.take()
            query.projection = None
        else:
            names = []
            while self.peek().type == "var":
                names.append(self.take().value)
            if not names:
                self.error("expected at least one variable or '*' after SELECT")
            query.projection = names

        if self.peek().type == "keyword" and self.peek().value == "WHERE":
            self.take()
        self.expect("{", "expected '{' opening the WHERE clause")
        self._parse_group(query)
        self.expect("}", "expected '}' closing the WHERE clause")
        self._parse_modifiers(query)
        tok = self.peek()
        if tok.type != "eof":
            self.error("unexpected trailing content after query", tok)

        if query.projection is not None:
            pattern_vars = set(query.pattern_variables())
            for name in query.projection:
                if name not in pattern_vars:
                    self.error(f"projected variable ?{name} does not appear in the WHERE clause")
        return query

    def _parse_group(self, query: SelectQuery) -> None:
        while True:
            tok = self.peek()
            if tok.type == "}":
                return
            if tok.type == "eof":
                self.error("expected '}' closing the WHERE clause (end of input reached)", tok)
            if tok.type == "keyword" and tok.value == "FILTER":
                self.take()
                self.expect("(", "expected '(' after FILTER")
                query.filters.append(self._parse_filter_expr())
                self.expect(")", "expected ')' closing the FILTER expression")
                if self.peek().type == ".":
                    self.take()
                continue
            self._parse_triples_block(query)

    def _parse_triples_block(self, query: SelectQuery) -> None:
        subject = self._parse_term(allow_literal=False, position="subject")
        while True:
            predicate = self._parse_verb()
            while True:
                obj = self._parse_term(allow_literal=True, position="object")
                query.patterns.append((subject, predicate, obj))
                if self.peek().type == ",":
                    self.take()
                    continue
                break
            if self.peek().type == ";":
                self.take()
                if self.peek().type in (".", "}"):  # trailing semicolon
                    break
                continue
            break
        if self.peek().type == ".":
            self.take()

    def _parse_verb(self):
        tok = self.peek()
        if tok.type == "a":
            self.take()
            return iri(RDF_TYPE)
        term = self._parse_term(allow_literal=False, position="predicate")
        if isinstance(term, RdfTerm) and not term.is_iri:
            self.error("predicate must be an IRI or variable", tok)
        return term

    def _parse_term(self, allow_literal: bool, position: str):
        tok = self.take()
        if tok.type == "var":
            return Var(tok.value)
        if tok.type == "iriref":
            return iri(tok.value)
        if tok.type == "pname":
            prefix, local = tok.value
            ns = self.prefixes.get(prefix)
            if ns is None:
                self.error(f"undefined prefix '{prefix}:'", tok)
            return iri(ns + local)
        if tok.type == "string":
            if not allow_literal:
                self.error(f"literal not allowed as {position}", tok)
            return self._finish_literal(tok.value)
        if tok.type == "number":
            if not allow_literal:
                self.error(f"literal not allowed as {position}", tok)
            text, kind = tok.value
            datatype = {
                "integer": XSD_INTEGER,
                "decimal": XSD_DECIMAL,
                "double": XSD_DOUBLE,
            }[kind]
            return literal(text, datatype=datatype)
        if tok.type == "boolean":
            if not allow_literal:
                self.error(f"literal not allowed as {position}", tok)
            return literal(tok.value, datatype=XSD_BOOLEAN)
        if tok.type == "eof":
            self.error(f"expected {position} term (end of input reached)", tok)
        self.error(f"expected {position} term, found {tok.type!r}", tok)
        raise AssertionError

    def _finish_literal(self, value: str) -> RdfTerm:
        tok = self.peek()
        if tok.type == "langtag":
            self.take()
            return literal(value, language=tok.value)
        if tok.type == "^^":
            self.take()
            dt = self.take()
            if dt.type == "iriref":
                return literal(value, datatype=dt.value)
            if dt.type == "pname":
                prefix, local = dt.value
                ns = self.prefixes.get(prefix)
                if ns is None:
                    self.error(f"undefined prefix '{prefix}:'", dt)
                return literal(value, datatype=ns + local)
            self.error("expected datatype IRI after '^^'", dt)
        return literal(value)

    def _parse_filter_expr(self):
        return self._parse_or()

    def _parse_or(self):
        left = self._parse_and()
        while self.peek().type == "bool" and self.peek().value == "||":
            self.take()
            right = self._parse_and()
            left = BoolExpr("||", left, right)
        return left

    def _parse_and(self):
        left = self._parse_primary()
        while self.peek().type == "bool" and self.peek().value == "&&":
            self.take()
            right = self._parse_primary()
            left = BoolExpr("&&", left, right)
        return left

    def _parse_primary(self):
        if self.peek().type == "(":
            self.take()
            inner = self._parse_or()
            self.expect(")", "expected ')' in FILTER expression")
            return inner
        left = self._parse_operand()
        op_tok = self.peek()
        if op_tok.type != "op":
            self.error("expected comparison operator (=, !=, < or >)", op_tok)
        self.take()
        right = self._parse_operand()
        return Comparison(op_tok.value, left, right)

    def _parse_operand(self):
        tok = self.peek()
        if tok.type in ("var", "iriref", "pname", "string", "number", "boolean"):
            return self._parse_term(allow_literal=True, position="filter operand")
        self.error("expected variable or literal in FILTER expression", tok)

    def _parse_modifiers(self, query: SelectQuery) -> None:
        if self.peek().type == "keyword" and self.peek().value == "ORDER":
            self.take()
            self.expect_keyword("BY")
            keys = []
            while True:
                tok = self.peek()
                if tok.type == "var":
                    self.take()
                    keys.append(OrderKey(Var(tok.value)))
                elif tok.type == "keyword" and tok.value in ("ASC", "DESC"):
                    self.take()
                    self.expect("(", f"expected '(' after {tok.value}")
                    var_tok = self.expect("var", "expected variable in ORDER BY key")
                    self.expect(")", "expected ')' in ORDER BY key")
                    keys.append(OrderKey(Var(var_tok.value), descending=tok.value == "DESC"))
                else:
                    break
            if not keys:
                self.error("expected at least one ORDER BY key")
            query.order_by = keys
        for _ in range(2):
            tok = self.peek()
            if tok.type == "keyword" and tok.value == "LIMIT" and query.limit is None:
                self.take()
                query.limit = self._read_count("LIMIT")
            elif tok.type == "keyword" and tok.value == "OFFSET" and query.offset is None:
                self.take()
                query.offset = self._read_count("OFFSET")
        return

    def _read_count(self, what: str) -> int:
        tok = self.expect("number", f"expected a non-negative integer after {what}")
        text, kind = tok.value
        if kind != "integer" or int(text) < 0:
            self.error(f"{what} requires a non-negative integer", tok)
        return int(text)


def parse_select(text: str) -> SelectQuery:
    """Parse a SELECT query in the supported subset.

    Raises SparqlParseError with line/column on everything else; never
    panics on arbitrary input.
    """
    return _Parser(text).parse()
