"""Syntax-fix task: present a broken RDF document, loop until it parses.

Scores: parsableSyntax, contentF1 (normalized triple F1, only when the
document parses), strSimilarity against the gold document, brevity, and
combined = 0.1*strSimilarity + 0.2*parsableSyntax + 0.7*contentF1.
"""

from __future__ import annotations

from typing import Optional

from ..rdf import ParseError, parse_graph, triple_f1
from ..rdf.io import BLOCK_TAGS
from ..text import brevity_score, string_similarity
from ..taskdata import load_container
from .base import DialogueFixTask, TaskDataError, answer_block, fenced, select_task_case

FORMAT_NAMES = {"turtle": "turtle", "jsonld": "JSON-LD", "ntriples": "N-Triples"}

CORRECTION_PROMPT_RDF = (
    "Please correct your answer following the expected structure "
    "(exactly one fenced code block with the RDF, no other text)."
)

_INITIAL_PROMPT = """\
Please fix all syntax errors of the following RDF in {format_name} syntax.
Try to stick with the original formatting of the RDF given and only change as few characters as necessary.
To support automated parsing, please answer with just one markdown fenced code block (start and end with ```) containing the rdf, no other text.

{document_block}

Parsing error message: {error}"""

_REPROMPT = """\
There are still syntax errors in the RDF of your answer.
Please fix all syntax errors, again changing as few characters as necessary, and answer with just one markdown fenced code block (start and end with ```) containing the rdf, no other text.

Parsing error message: {error}"""


def combined_fix_score(
    str_similarity_value: float, parsable_syntax: float, content_f1: float
) -> float:
    """The fix-task combined score: 0.1*str + 0.2*parsable + 0.7*f1."""
    return 0.1 * str_similarity_value + 0.2 * parsable_syntax + 0.7 * content_f1


class RdfSyntaxFixTask(DialogueFixTask):
    class_id = "RdfSyntaxFixList"
    supported_formats = ("turtle", "jsonld", "ntriples")
    max_rounds = 3

    def __init__(self, parameters: dict, case: dict, case_index: int = 0):
        super().__init__(parameters, case_index)
        self.format = case["format"]
        if self.format not in self.supported_formats:
            raise TaskDataError(f"{self.class_id} does not support format {self.format!r}")
        self.input_document = case["inputDocument"]
        self.gold_document = case["goldDocument"]
        self.case_id = case.get("caseId", "")
        self.gold_graph = parse_graph(self.gold_document, self.format)
        try:
            parse_graph(self.input_document, self.format)
        except ParseError as exc:
            self._input_error = exc
        else:
            raise TaskDataError(
                f"fix case {self.case_id!r}: input document parses cleanly"
            )

    @classmethod
    def create(cls, parameters: dict, iteration_index: int, seed: int) -> "RdfSyntaxFixTask":
        fmt = parameters.get("graphFormat", "turtle")
        container = load_container("rdf_syntax_fix")
        entries = [e for e in container["entries"] if e["format"] == fmt]
        if not entries:
            raise TaskDataError(f"no {cls.class_id} entries for format {fmt!r}")
        case = select_task_case(entries, iteration_index)
        return cls(parameters, case, case_index=iteration_index % len(entries))

    def _condensed_case(self) -> dict:
        return {
            "caseId": self.case_id,
            "format": self.format,
            "inputDocument": self.input_document,
            "goldDocument": self.gold_document,
        }

    @classmethod
    def _from_condensed_case(cls, parameters: dict, case: dict) -> "RdfSyntaxFixTask":
        return cls(parameters, case)

    # --- dialogue ------------------------------------------------------
    def initial_prompt(self) -> str:
        return _INITIAL_PROMPT.format(
            format_name=FORMAT_NAMES[self.format],
            document_block=fenced(self.input_document, BLOCK_TAGS[self.format]),
            error=self._input_error.prompt_text(),
        )

    def check_answer(self, answer: str) -> Optional[str]:
        content, case = answer_block(answer)
        if case != "ok":
            return CORRECTION_PROMPT_RDF
        try:
            parse_graph(content, self.format)
        except ParseError as exc:
            return _REPROMPT.format(error=exc.prompt_text())
        return None

    # --- scoring ---------------------------------------------------------
    def round_scores(self, answer: str) -> dict:
        brevity = brevity_score(answer)
        content, case = answer_block(answer)
        parsable = 0.0
        content_f1 = 0.0
        if case == "ok":
            try:
                graph = parse_graph(content, self.format)
                parsable = 1.0
                content_f1 = triple_f1(graph, self.gold_graph)[2]
            except ParseError:
                pass
            similarity_target = content
        elif case == "zero":
            similarity_target = answer
        else:
            similarity_target = content or ""
        str_sim = string_similarity(similarity_target.strip(), self.gold_document.strip())
        return {
            "parsableSyntax": parsable,
            "contentF1": content_f1,
            "strSimilarity": str_sim,
            "brevity": brevity,
            "combined": combined_fix_score(str_sim, parsable, content_f1),
        }

    def zero_scores(self) -> dict:
        return {
            "parsableSyntax": 0.0,
            "contentF1": 0.0,
            "strSimilarity": 0.0,
            "brevity": 0.0,
            "combined": 0.0,
        }

    def gold_answer(self, dialogue) -> str:
        return fenced(self.gold_document, BLOCK_TAGS[self.format])
