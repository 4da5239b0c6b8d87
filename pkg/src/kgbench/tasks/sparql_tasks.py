"""SPARQL tasks: execute a query, answer a question, write a query, and fix
a broken query in a correction loop.

Result-set scoring goes through the CSV answer convention; query answers
are parsed and executed against the case's knowledge graph and compared to
the materialized gold results.
"""

from __future__ import annotations

from typing import Optional

from ..rdf import parse_graph, serialize_graph
from ..rdf.io import BLOCK_TAGS
from ..rdf.model import term_from_json, term_to_json
from ..sparql import (
    ResultSet,
    SparqlParseError,
    UnsupportedFeatureError,
    execute_select,
    parse_answer_rows,
    parse_select,
    render_answer_rows,
    result_set_f1,
)
from ..text import brevity_score, string_similarity
from ..taskdata import load_container
from .base import (
    DialogueFixTask,
    SinglePromptTask,
    TaskDataError,
    answer_block,
    fenced,
    select_task_case,
)
from .rdf_analytics import PROMPT_FORMAT_NAMES
from .rdf_fix import combined_fix_score

DEFAULT_DATASET = "orga"

CORRECTION_PROMPT_SPARQL = (
    "Please correct your answer following the expected structure "
    "(exactly one fenced code block with the SPARQL query, no other text)."
)

_ANSWER_FORMAT_NOTE = (
    "Answer with just one markdown fenced code block (start and end with ```) "
    "containing the result set as CSV: a header line with the variable names, "
    "then one line per result row. Write IRIs as prefixed names where a prefix "
    "is declared and literals as their plain value, no other text."
)


def _results_from_json(doc: dict) -> ResultSet:
    variables = list(doc["variables"])
    rows = []
    for row in doc["rows"]:
        rows.append({v: term_from_json(cell) for v, cell in zip(variables, row)})
    return ResultSet(variables, rows)


def _results_to_json(rs: ResultSet) -> dict:
    return {
        "variables": rs.variables,
        "rows": [[term_to_json(row[v]) for v in rs.variables] for row in rs.rows],
    }


class SparqlCase:
    """One concrete SPARQL exercise: KG, question, gold query, gold results."""

    def __init__(self, case: dict):
        self.case_id = case.get("caseId", "")
        self.kg_turtle = case["kgTurtle"]
        self.kg = parse_graph(self.kg_turtle, "turtle")
        self.question = case.get("question", "")
        self.gold_query = case["goldQuery"]
        self.corrupted_query = case.get("corruptedQuery")
        self.gold_results = _results_from_json(case["goldResults"])
        # gold self-consistency: stored results must match re-execution
        executed = execute_select(parse_select(self.gold_query), self.kg)
        _, _, f1 = result_set_f1(executed, self.gold_results, self.kg.prefixes)
        if f1 != 1.0 or len(executed.rows) != len(self.gold_results.rows):
            raise TaskDataError(
                f"case {self.case_id!r}: stored gold results do not match execution"
            )

    def to_dict(self) -> dict:
        return {
            "caseId": self.case_id,
            "kgTurtle": self.kg_turtle,
            "question": self.question,
            "goldQuery": self.gold_query,
            "corruptedQuery": self.corrupted_query,
            "goldResults": _results_to_json(self.gold_results),
        }

    def result_f1(self, candidate: ResultSet) -> float:
        _, _, f1 = result_set_f1(candidate, self.gold_results, self.kg.prefixes)
        return f1

    @staticmethod
    def select(parameters: dict, iteration_index: int) -> tuple["SparqlCase", int]:
        dataset = parameters.get("dataset", DEFAULT_DATASET)
        container = load_container("sparql_cases")
        datasets = container["datasets"]
        if dataset not in datasets:
            raise TaskDataError(f"unknown SPARQL dataset {dataset!r}")
        bundle = datasets[dataset]
        cases = bundle["cases"]
        raw = dict(select_task_case(cases, iteration_index))
        raw["kgTurtle"] = bundle["graphTurtle"]
        return SparqlCase(raw), iteration_index % len(cases)


class _SparqlCaseTask(SinglePromptTask):
    """Shared single-prompt plumbing around a SparqlCase."""

    def __init__(self, parameters: dict, case: dict, case_index: int = 0):
        super().__init__(parameters, case_index)
        self.format = parameters.get("graphFormat", "turtle")
        if self.supported_formats and self.format not in self.supported_formats:
            raise TaskDataError(f"unsupported graphFormat {self.format!r}")
        self.case = SparqlCase(case)

    @classmethod
    def create(cls, parameters: dict, iteration_index: int, seed: int):
        case, case_index = SparqlCase.select(parameters, iteration_index)
        return cls(parameters, case.to_dict(), case_index)

    def _condensed_case(self) -> dict:
        return self.case.to_dict()

    @classmethod
    def _from_condensed_case(cls, parameters: dict, case: dict):
        return cls(parameters, case)

    def _kg_block(self) -> str:
        doc = serialize_graph(self.case.kg, self.format)
        return (
            f"The following RDF knowledge graph in "
            f"{PROMPT_FORMAT_NAMES[self.format]} syntax:\n\n"
            f"{fenced(doc, BLOCK_TAGS[self.format])}"
        )


class Sparql2AnswerTask(_SparqlCaseTask):
    """Given KG and SELECT query, produce the query's result set."""

    class_id = "Sparql2AnswerList"
    supported_formats = ("turtle", "jsonld", "ntriples", "rdfxml")

    def initial_prompt(self) -> str:
        return (
            f"{self._kg_block()}\n\n"
            "Execute the following SPARQL SELECT query on the graph above:\n\n"
            f"{fenced(self.case.gold_query, 'sparql')}\n\n"
            f"{_ANSWER_FORMAT_NOTE}"
        )

    def score_answer(self, answer: str) -> dict:
        brevity = brevity_score(answer)
        content, case = answer_block(answer)
        f1 = 0.0
        if case == "ok" and content is not None:
            candidate = parse_answer_rows(content, self.case.kg.prefixes)
            f1 = self.case.result_f1(candidate)
        return {"resultF1": f1, "brevity": brevity, "combined": f1}

    def zero_scores(self) -> dict:
        return {"resultF1": 0.0, "brevity": 0.0, "combined": 0.0}

    def gold_answer(self, dialogue) -> str:
        return fenced(render_answer_rows(self.case.gold_results, self.case.kg.prefixes))


class Text2AnswerTask(Sparql2AnswerTask):
    """Same scoring as Sparql2AnswerList, but the prompt shows the question."""

    class_id = "Text2AnswerList"

    def initial_prompt(self) -> str:
        return (
            f"{self._kg_block()}\n\n"
            "Answer the following question using only the graph above:\n\n"
            f"{self.case.question}\n\n"
            f"{_ANSWER_FORMAT_NOTE}"
        )


class Text2SparqlTask(_SparqlCaseTask):
    """Translate a question into a SELECT query; scored on executed results.

    combined = 0.2*querySyntax + 0.8*resultF1.
    """

    class_id = "Text2SparqlList"
    supported_formats = ("turtle", "jsonld", "ntriples", "rdfxml")

    def initial_prompt(self) -> str:
        return (
            f"{self._kg_block()}\n\n"
            "Translate the following question into a SPARQL SELECT query "
            "for the graph above:\n\n"
            f"{self.case.question}\n\n"
            "Answer with just one markdown fenced code block (start and end "
            "with ```) containing only the SPARQL SELECT query, no other text. "
            "Use only SELECT with basic graph patterns, FILTER, ORDER BY, "
            "LIMIT and OFFSET."
        )

    def score_answer(self, answer: str) -> dict:
        brevity = brevity_score(answer)
        content, case = answer_block(answer)
        syntax = 0.0
        f1 = 0.0
        if case == "ok" and content is not None:
            try:
                query = parse_select(content)
                syntax = 1.0
            except SparqlParseError:
                query = None
            if query is not None:
                try:
                    executed = execute_select(query, self.case.kg)
                    f1 = self.case.result_f1(executed)
                except UnsupportedFeatureError:
                    f1 = 0.0
        return {
            "querySyntax": syntax,
            "resultF1": f1,
            "brevity": brevity,
            "combined": 0.2 * syntax + 0.8 * f1,
        }

    def zero_scores(self) -> dict:
        return {"querySyntax": 0.0, "resultF1": 0.0, "brevity": 0.0, "combined": 0.0}

    def gold_answer(self, dialogue) -> str:
        return fenced(self.case.gold_query, "sparql")


class SparqlSyntaxFixTask(DialogueFixTask):
    """Fix a corrupted SELECT query over up to three correction rounds.

    combined = 0.1*strSimilarity + 0.2*querySyntax + 0.7*resultF1, mirroring
    the RDF fix-task weights.
    """

    class_id = "SparqlSyntaxFixingList"
    supported_formats = ()
    max_rounds = 3

    def __init__(self, parameters: dict, case: dict, case_index: int = 0):
        super().__init__(parameters, case_index)
        self.case = SparqlCase(case)
        if not self.case.corrupted_query:
            raise TaskDataError("SparqlSyntaxFixingList case lacks a corruptedQuery")
        try:
            parse_select(self.case.corrupted_query)
        except SparqlParseError as exc:
            self._input_error = exc
        else:
            raise TaskDataError(
                f"case {self.case.case_id!r}: corruptedQuery unexpectedly parses"
            )

    @classmethod
    def create(cls, parameters: dict, iteration_index: int, seed: int):
        case, case_index = SparqlCase.select(parameters, iteration_index)
        return cls(parameters, case.to_dict(), case_index)

    def _condensed_case(self) -> dict:
        return self.case.to_dict()

    @classmethod
    def _from_condensed_case(cls, parameters: dict, case: dict):
        return cls(parameters, case)

    def initial_prompt(self) -> str:
        return (
            "Please fix all syntax errors of the following SPARQL SELECT query.\n"
            "Try to stick with the original formatting of the query given and "
            "only change as few characters as necessary.\n"
            "To support automated parsing, please answer with just one markdown "
            "fenced code block (start and end with ```) containing the query, "
            "no other text.\n\n"
            f"{fenced(self.case.corrupted_query, 'sparql')}\n\n"
            f"Parsing error message: {self._input_error.prompt_text()}"
        )

    def check_answer(self, answer: str) -> Optional[str]:
        content, case = answer_block(answer)
        if case != "ok":
            return CORRECTION_PROMPT_SPARQL
        try:
            parse_select(content)
        except SparqlParseError as exc:
            return (
                "The query in your answer still has syntax errors.\n"
                "Please fix all syntax errors, again changing as few characters "
                "as necessary, and answer with just one markdown fenced code "
                "block containing the query, no other text.\n\n"
                f"Parsing error message: {exc.prompt_text()}"
            )
        return None

    def round_scores(self, answer: str) -> dict:
        brevity = brevity_score(answer)
        content, case = answer_block(answer)
        syntax = 0.0
        f1 = 0.0
        similarity_target = ""
        if case == "ok" and content is not None:
            similarity_target = content
            try:
                query = parse_select(content)
                syntax = 1.0
            except SparqlParseError:
                query = None
            if query is not None:
                try:
                    executed = execute_select(query, self.case.kg)
                    f1 = self.case.result_f1(executed)
                except UnsupportedFeatureError:
                    f1 = 0.0
        elif case == "zero":
            similarity_target = answer
        else:
            similarity_target = content or ""
        str_sim = string_similarity(
            similarity_target.strip(), self.case.gold_query.strip()
        )
        return {
            "querySyntax": syntax,
            "resultF1": f1,
            "strSimilarity": str_sim,
            "brevity": brevity,
            "combined": combined_fix_score(str_sim, syntax, f1),
        }

    def zero_scores(self) -> dict:
        return {
            "querySyntax": 0.0,
            "resultF1": 0.0,
            "strSimilarity": 0.0,
            "brevity": 0.0,
            "combined": 0.0,
        }

    def gold_answer(self, dialogue) -> str:
        return fenced(self.case.gold_query, "sparql")
