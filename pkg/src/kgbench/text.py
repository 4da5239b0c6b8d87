"""Answer-text utilities: fenced code block extraction, brevity, similarity.

These are the format-level scoring primitives shared by all tasks. Model
answers are expected to consist of exactly one markdown fenced code block;
everything here is defined relative to that convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class FencedBlock:
    """One fenced code block found in an answer."""

    content: str
    info_tag: Optional[str]
    fence_char_count: int  # non-whitespace chars on the two fence lines


@dataclass(frozen=True)
class BlockExtraction:
    """Result of scanning an answer for fenced code blocks."""

    blocks: list  # list[FencedBlock]
    extra_text_chars: int  # non-whitespace chars outside all blocks
    total_chars: int  # non-whitespace chars in the whole answer


class FormatViolation(Exception):
    """Answer did not contain exactly one fenced code block."""

    def __init__(self, case: str, extraction: BlockExtraction):
        if case not in ("zero", "multiple"):
            raise ValueError(case)
        self.case = case
        self.extraction = extraction
        super().__init__(f"expected exactly one fenced code block, found {case}")


def _non_ws(text: str) -> int:
    return sum(1 for c in text if not c.isspace())


def scan_blocks(answer: str) -> BlockExtraction:
    """Scan an answer for ``` fenced blocks (line-based, CommonMark-style)."""
    blocks: list[FencedBlock] = []
    outside: list[str] = []
    in_block = False
    info: Optional[str] = None
    content_lines: list[str] = []
    fence_chars = 0
    for line in answer.splitlines():
        stripped = line.strip()
        if stripped.startswith("```"):
            if not in_block:
                in_block = True
                info = stripped[3:].strip() or None
                content_lines = []
                fence_chars = _non_ws(line)
            else:
                fence_chars += _non_ws(line)
                blocks.append(
                    FencedBlock("\n".join(content_lines), info, fence_chars)
                )
                in_block = False
        elif in_block:
            content_lines.append(line)
        else:
            outside.append(line)
    if in_block:
        # Unterminated fence: treat the whole tail as prose, not a block.
        outside.append("```" + (info or ""))
        outside.extend(content_lines)
    extra = sum(_non_ws(line) for line in outside)
    return BlockExtraction(blocks, extra, _non_ws(answer))


def extract_fenced_block(answer: str) -> tuple[str, Optional[str], int]:
    """Return (content, info tag, non-ws chars outside the block).

    Raises FormatViolation("zero"|"multiple") unless exactly one fenced
    block is present. The returned content never includes the fence lines.
    """
    extraction = scan_blocks(answer)
    if len(extraction.blocks) == 0:
        raise FormatViolation("zero", extraction)
    if len(extraction.blocks) > 1:
        raise FormatViolation("multiple", extraction)
    block = extraction.blocks[0]
    return block.content, block.info_tag, extraction.extra_text_chars


def brevity_score(answer: str) -> float:
    """How much of the answer is the requested block, in [0, 1].

    Exactly one block: (non-ws chars inside the block + its fence lines) /
    total non-ws chars. No block: 0. Multiple blocks: the same ratio for the
    largest block.
    """
    extraction = scan_blocks(answer)
    if not extraction.blocks or extraction.total_chars == 0:
        return 0.0
    block = max(extraction.blocks, key=lambda b: _non_ws(b.content))
    covered = _non_ws(block.content) + block.fence_char_count
    return min(1.0, covered / extraction.total_chars)


def levenshtein(a: str, b: str) -> int:
    """Unit-cost edit distance, iterative two-row DP."""
    if a == b:
        return 0
    if not a:
        return len(b)
    if not b:
        return len(a)
    if len(a) < len(b):
        a, b = b, a
    previous = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        current = [i]
        for j, cb in enumerate(b, start=1):
            current.append(
                min(
                    previous[j] + 1,
                    current[j - 1] + 1,
                    previous[j - 1] + (ca != cb),
                )
            )
        previous = current
    return previous[-1]


def string_similarity(candidate: str, expected: str) -> float:
    """1 - editDistance / max(len); both empty -> 1.0."""
    longest = max(len(candidate), len(expected))
    if longest == 0:
        return 1.0
    return 1.0 - levenshtein(candidate, expected) / longest
