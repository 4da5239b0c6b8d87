"""Deterministic syntax-error injection for RDF documents.

Each error kind applies one localized corruption; the result is verified to
fail parsing. Kinds mirror the fix-task error taxonomy: missing formatting
character, additional formatting character, invalid language/datatype
combination on a literal, misspelled prefix, and wrong character escaping
inside a string literal.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .errors import ParseError
from .io import parse_graph
from .model import XSD_STRING

ERROR_KINDS = (
    "missing_char",
    "extra_char",
    "lang_type_conflict",
    "misspelled_prefix",
    "bad_escape",
)

_MAX_ATTEMPTS = 60


class CorruptionError(RuntimeError):
    """No valid corruption of the requested kind could be generated."""


@dataclass(frozen=True)
class Corruption:
    kind: str
    line: int
    description: str


@dataclass(frozen=True)
class _Edit:
    pos: int
    length: int  # chars removed at pos
    insert: str
    kind: str
    description: str

    def overlaps(self, other: "_Edit") -> bool:
        a0, a1 = self.pos, self.pos + max(self.length, 1)
        b0, b1 = other.pos, other.pos + max(other.length, 1)
        return a0 < b1 and b0 < a1


def _line_of(text: str, pos: int) -> int:
    return text.count("\n", 0, pos) + 1


def _apply(text: str, edits: list[_Edit]) -> str:
    for edit in sorted(edits, key=lambda e: e.pos, reverse=True):
        text = text[: edit.pos] + edit.insert + text[edit.pos + edit.length :]
    return text


def _string_spans(text: str) -> list[tuple[int, int]]:
    """Spans of double-quoted string bodies (content between the quotes)."""
    spans = []
    i = 0
    in_string = False
    start = 0
    while i < len(text):
        c = text[i]
        if in_string:
            if c == "\\":
                i += 1
            elif c == '"':
                spans.append((start, i))
                in_string = False
        elif c == '"':
            in_string = True
            start = i + 1
        i += 1
    return spans


def _structural_positions(text: str, chars: str, fmt: str) -> list[int]:
    """Indices of the given chars outside strings (and outside IRIs/comments)."""
    out = []
    in_string = False
    in_iri = False
    in_comment = False
    i = 0
    while i < len(text):
        c = text[i]
        if in_string:
            if c == "\\":
                i += 1
            elif c == '"':
                in_string = False
        elif in_comment:
            if c == "\n":
                in_comment = False
        elif in_iri:
            if c == ">":
                in_iri = False
        else:
            if c == '"':
                in_string = True
            elif c == "<" and fmt in ("turtle", "ntriples"):
                in_iri = True
            elif c == "#" and fmt == "turtle":
                in_comment = True
            elif c in chars:
                out.append(i)
        i += 1
    return out


# candidate generators -------------------------------------------------

def _candidates_missing_char(text: str, fmt: str) -> list[_Edit]:
    chars = {"turtle": ".;,", "ntriples": ".", "jsonld": "{}[],:"}[fmt]
    return [
        _Edit(pos, 1, "", "missing_char", f"removed {text[pos]!r}")
        for pos in _structural_positions(text, chars, fmt)
    ]


def _candidates_extra_char(text: str, fmt: str) -> list[_Edit]:
    chars = {"turtle": ".;,", "ntriples": ".", "jsonld": ",}]"}[fmt]
    out = []
    for pos in _structural_positions(text, chars, fmt):
        for c in chars:
            out.append(_Edit(pos, 0, c, "extra_char", f"inserted extra {c!r}"))
    return out


def _candidates_lang_type(text: str, fmt: str) -> list[_Edit]:
    out = []
    if fmt in ("turtle", "ntriples"):
        dt_suffix = f"^^<{XSD_STRING}>"
        for match in re.finditer(r'"(?:[^"\\\n]|\\.)*"(@[A-Za-z][A-Za-z0-9-]*)?', text):
            end = match.end()
            if match.group(1):
                out.append(
                    _Edit(end, 0, dt_suffix, "lang_type_conflict",
                          "added datatype to language-tagged literal")
                )
            elif text[end : end + 2] == "^^":
                out.append(
                    _Edit(end, 0, "@en", "lang_type_conflict",
                          "added language tag to typed literal")
                )
            else:
                out.append(
                    _Edit(end, 0, "@en" + dt_suffix, "lang_type_conflict",
                          "added language tag plus datatype to plain literal")
                )
    else:
        for match in re.finditer(r'"@language"', text):
            out.append(
                _Edit(match.start(), 0, f'"@type": "{XSD_STRING}", ',
                      "lang_type_conflict", "added @type next to @language")
            )
        for match in re.finditer(r'"@value"', text):
            out.append(
                _Edit(match.start(), 0,
                      f'"@language": "en", "@type": "{XSD_STRING}", ',
                      "lang_type_conflict", "added @language plus @type to literal object")
            )
        # Bare string property values: rewrite into a conflicted literal object.
        context_end = _jsonld_context_end(text)
        for match in re.finditer(r'"([A-Za-z_:][^"\\]*)":\s*("(?:[^"\\]|\\.)*")', text):
            if match.start() < context_end or match.group(1).startswith("@"):
                continue
            value = match.group(2)
            replacement = (
                f'{{"@value": {value}, "@language": "en", "@type": "{XSD_STRING}"}}'
            )
            out.append(
                _Edit(match.start(2), len(value), replacement, "lang_type_conflict",
                      "turned plain literal into conflicted literal object")
            )
    return out


def _jsonld_context_end(text: str) -> int:
    """End index of the @context object, or 0 when absent."""
    context = re.search(r'"@context"', text)
    if not context:
        return 0
    brace = text.find("{", context.end())
    if brace < 0:
        return 0
    depth = 0
    for i in range(brace, len(text)):
        if text[i] == "{":
            depth += 1
        elif text[i] == "}":
            depth -= 1
            if depth == 0:
                return i
    return 0


def _misspell(prefix: str) -> str:
    if len(prefix) >= 2:
        return prefix[1] + prefix[0] + prefix[2:]
    return prefix + prefix


def _candidates_misspelled_prefix(text: str, fmt: str) -> list[_Edit]:
    out = []
    if fmt == "turtle":
        declared = set(re.findall(r"@prefix\s+([A-Za-z_][\w-]*):", text))
        declared |= set(re.findall(r"PREFIX\s+([A-Za-z_][\w-]*):", text))
        for match in re.finditer(r"(?<![\w@:<])([A-Za-z_][\w-]*):", text):
            prefix = match.group(1)
            if prefix not in declared:
                continue
            if text[max(0, match.start() - 8) : match.start()].rstrip().endswith("@prefix"):
                continue
            bad = _misspell(prefix)
            if bad in declared:
                continue
            out.append(
                _Edit(match.start(1), len(prefix), bad, "misspelled_prefix",
                      f"misspelled prefix {prefix!r} as {bad!r}")
            )
    elif fmt == "jsonld":
        # Skip the @context block: misspell usages only, not definitions.
        context_end = _jsonld_context_end(text)
        declared = set(re.findall(r'"([A-Za-z_][\w-]*)":\s*"http', text))
        for match in re.finditer(r'"([A-Za-z_][\w-]*):([^"\\]*)"', text):
            prefix = match.group(1)
            if prefix not in declared or match.start() < context_end:
                continue
            bad = _misspell(prefix)
            if bad in declared:
                continue
            out.append(
                _Edit(match.start() + 1, len(prefix), bad, "misspelled_prefix",
                      f"misspelled prefix {prefix!r} as {bad!r}")
            )
    return out


_VALID_TTL_ESCAPES = set("tbnrf\"'\\uU")
_VALID_JSON_ESCAPES = set('"\\/bfnrtu')


def _candidates_bad_escape(text: str, fmt: str) -> list[_Edit]:
    valid = _VALID_JSON_ESCAPES if fmt == "jsonld" else _VALID_TTL_ESCAPES
    out = []
    for start, end in _string_spans(text):
        for i in range(start, end):
            c = text[i]
            if c.isalpha() and c not in valid and (i == start or text[i - 1] != "\\"):
                out.append(
                    _Edit(i, 0, "\\", "bad_escape",
                          f"inserted invalid escape before {c!r}")
                )
                break  # one candidate per string literal is plenty
    return out


_GENERATORS = {
    "missing_char": _candidates_missing_char,
    "extra_char": _candidates_extra_char,
    "lang_type_conflict": _candidates_lang_type,
    "misspelled_prefix": _candidates_misspelled_prefix,
    "bad_escape": _candidates_bad_escape,
}


def _parses(text: str, fmt: str) -> bool:
    try:
        parse_graph(text, fmt)
        return True
    except ParseError:
        return False


def inject_syntax_errors(
    document: str,
    fmt: str,
    error_kinds: list[str],
    seed: int,
) -> tuple[str, list[Corruption]]:
    """Corrupt a clean document with one localized error per requested kind.

    Returns (corrupted text, corruption notes). Deterministic under seed.
    Raises CorruptionError if a kind has no valid application.
    """
    if not 1 <= len(error_kinds) <= 4:
        raise CorruptionError("between one and four error kinds are required")
    for kind in error_kinds:
        if kind not in ERROR_KINDS:
            raise CorruptionError(f"unknown error kind {kind!r}")
    if not _parses(document, fmt):
        raise ParseError("document to corrupt must parse cleanly", 1)

    rng = random.Random(seed)
    chosen: list[_Edit] = []
    for kind in error_kinds:
        candidates = _GENERATORS[kind](document, fmt)
        rng.shuffle(candidates)
        picked = None
        for candidate in candidates[:_MAX_ATTEMPTS]:
            if any(candidate.overlaps(e) for e in chosen):
                continue
            if _parses(_apply(document, [candidate]), fmt):
                continue  # this corruption accidentally still parses
            picked = candidate
            break
        if picked is None:
            raise CorruptionError(
                f"could not apply error kind {kind!r} to this {fmt} document"
            )
        chosen.append(picked)

    corrupted = _apply(document, chosen)
    if _parses(corrupted, fmt):
        raise CorruptionError("combined corruptions unexpectedly parse")
    notes = [
        Corruption(e.kind, _line_of(document, e.pos), e.description)
        for e in sorted(chosen, key=lambda e: e.pos)
    ]
    return corrupted, notes
