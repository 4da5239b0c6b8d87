"""Errors shared by the RDF document parsers."""

from __future__ import annotations


class ParseError(Exception):
    """A positioned document parse failure.

    The rendered form ("at line N of <>: MESSAGE") is designed to be embedded
    verbatim into a correction prompt.
    """

    def __init__(self, message: str, line: int, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(self.prompt_text())

    def prompt_text(self) -> str:
        return f"at line {self.line} of <>: {self.message}"


class UnsupportedFormatError(ValueError):
    """Raised when an operation does not support the requested graph format."""
