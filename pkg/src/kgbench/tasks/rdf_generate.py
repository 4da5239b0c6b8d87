"""Generation tasks: fact-sheet extraction to Turtle, and free-form
creation of a small foaf:Person/foaf:knows sample graph."""

from __future__ import annotations

from ..rdf import ParseError, RdfGraph, parse_graph, serialize_graph, triple_f1
from ..rdf.model import FOAF_NS, RDF_TYPE, iri
from ..text import brevity_score
from ..taskdata import load_container
from .base import SinglePromptTask, TaskDataError, answer_block, fenced, select_task_case

FOAF_PERSON = FOAF_NS + "Person"
FOAF_KNOWS = FOAF_NS + "knows"


class FactExtractTask(SinglePromptTask):
    """Turn a textual fact sheet into a Turtle graph.

    combined = 0.2*parsableSyntax + 0.8*contentF1.
    """

    class_id = "FactExtractStatic"
    supported_formats = ()

    def __init__(self, parameters: dict, case: dict, case_index: int = 0):
        super().__init__(parameters, case_index)
        self.fact_sheet = case["factSheet"]
        self.vocab = case["vocab"]
        self.gold_document = case["goldDocument"]
        self.case_id = case.get("caseId", "")
        self.gold_graph = parse_graph(self.gold_document, "turtle")

    @classmethod
    def create(cls, parameters: dict, iteration_index: int, seed: int):
        container = load_container("fact_extract")
        entries = container["entries"]
        case = select_task_case(entries, iteration_index)
        return cls(parameters, case, case_index=iteration_index % len(entries))

    def _condensed_case(self) -> dict:
        return {
            "caseId": self.case_id,
            "factSheet": self.fact_sheet,
            "vocab": self.vocab,
            "goldDocument": self.gold_document,
        }

    @classmethod
    def _from_condensed_case(cls, parameters: dict, case: dict):
        return cls(parameters, case)

    def initial_prompt(self) -> str:
        return (
            "Extract all facts from the following fact sheet and create a "
            "corresponding RDF knowledge graph in Turtle syntax.\n"
            "Use exactly the prefixed terms mentioned in the fact sheet and declare "
            "the prefixes below.\n"
            "To support automated parsing, please answer with just one markdown "
            "fenced code block (start and end with ```) containing the rdf, "
            "no other text.\n\n"
            f"Fact sheet:\n\n{self.fact_sheet}\n"
            f"Prefix declarations to use:\n\n{fenced(self.vocab, 'turtle')}"
        )

    def score_answer(self, answer: str) -> dict:
        brevity = brevity_score(answer)
        content, case = answer_block(answer)
        parsable = 0.0
        content_f1 = 0.0
        if case == "ok" and content is not None:
            try:
                graph = parse_graph(content, "turtle")
                parsable = 1.0
                content_f1 = triple_f1(graph, self.gold_graph)[2]
            except ParseError:
                pass
        return {
            "parsableSyntax": parsable,
            "contentF1": content_f1,
            "brevity": brevity,
            "combined": 0.2 * parsable + 0.8 * content_f1,
        }

    def zero_scores(self) -> dict:
        return {
            "parsableSyntax": 0.0,
            "contentF1": 0.0,
            "brevity": 0.0,
            "combined": 0.0,
        }

    def gold_answer(self, dialogue) -> str:
        return fenced(self.gold_document, "turtle")


class TurtleSampleGenerationTask(SinglePromptTask):
    """Create a small graph with an exact person count and enough knows edges.

    combined = mean of [answer parses, exactly n typed persons, >= k knows
    edges between those persons].
    """

    class_id = "TurtleSampleGeneration"
    supported_formats = ()

    def __init__(self, parameters: dict, case_index: int = 0):
        super().__init__(parameters, case_index)
        self.person_count = int(parameters.get("personCount", 5))
        self.knows_count = int(parameters.get("knowsCount", 5))
        if self.person_count < 1:
            raise TaskDataError("personCount must be at least 1")
        if self.knows_count < 0:
            raise TaskDataError("knowsCount must be non-negative")
        if self.knows_count > self.person_count * (self.person_count - 1):
            raise TaskDataError("knowsCount exceeds the possible edges between persons")

    @classmethod
    def create(cls, parameters: dict, iteration_index: int, seed: int):
        return cls(parameters)

    def _condensed_case(self) -> dict:
        return {}

    @classmethod
    def _from_condensed_case(cls, parameters: dict, case: dict):
        return cls(parameters)

    def initial_prompt(self) -> str:
        return (
            "Create a small RDF graph in Turtle syntax containing exactly "
            f"{self.person_count} persons of type foaf:Person, connected by at "
            f"least {self.knows_count} foaf:knows relations between these persons.\n"
            "Declare and use the prefix foaf: <http://xmlns.com/foaf/0.1/>. "
            "You may invent IRIs for the persons.\n"
            "To support automated parsing, please answer with just one markdown "
            "fenced code block (start and end with ```) containing the rdf, "
            "no other text."
        )

    def score_answer(self, answer: str) -> dict:
        brevity = brevity_score(answer)
        content, case = answer_block(answer)
        parses = 0.0
        persons_ok = 0.0
        knows_ok = 0.0
        if case == "ok" and content is not None:
            try:
                graph = parse_graph(content, "turtle")
                parses = 1.0
            except ParseError:
                graph = None
            if graph is not None:
                persons = {
                    s
                    for s, p, o in graph.triples
                    if p.value == RDF_TYPE and o.is_iri and o.value == FOAF_PERSON
                }
                knows_edges = sum(
                    1
                    for s, p, o in graph.triples
                    if p.value == FOAF_KNOWS and s in persons and o in persons
                )
                persons_ok = 1.0 if len(persons) == self.person_count else 0.0
                knows_ok = 1.0 if knows_edges >= self.knows_count else 0.0
        combined = (parses + persons_ok + knows_ok) / 3.0
        return {
            "parsableSyntax": parses,
            "personCountOk": persons_ok,
            "knowsCountOk": knows_ok,
            "brevity": brevity,
            "combined": combined,
        }

    def zero_scores(self) -> dict:
        return {
            "parsableSyntax": 0.0,
            "personCountOk": 0.0,
            "knowsCountOk": 0.0,
            "brevity": 0.0,
            "combined": 0.0,
        }

    def gold_answer(self, dialogue) -> str:
        graph = RdfGraph(prefixes={"ex": "http://example.org/sample#", "foaf": FOAF_NS})
        people = [iri(f"http://example.org/sample#p{i + 1}") for i in range(self.person_count)]
        for person in people:
            graph.add(person, iri(RDF_TYPE), iri(FOAF_PERSON))
        pairs = [(a, b) for a in people for b in people if a != b]
        for a, b in pairs[: self.knows_count]:
            graph.add(a, iri(FOAF_KNOWS), b)
        return fenced(serialize_graph(graph, "turtle"), "turtle")
