"""Graph-reading tasks: explain a connection between two nodes, and find
the person with the most incoming foaf:knows edges in a generated graph."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from ..rdf import GRAPH_FORMATS, RdfGraph, parse_graph, serialize_graph
from ..rdf.io import BLOCK_TAGS
from ..rdf.model import FOAF_NS, RDF_TYPE, RdfTerm, expand_prefixed, iri, shrink_iri
from ..rdf.ntriples import parse_ntriples, serialize_ntriples
from ..text import brevity_score
from ..taskdata import load_container
from .base import SinglePromptTask, TaskDataError, answer_block, fenced, select_task_case

FOAF_PERSON = FOAF_NS + "Person"
FOAF_KNOWS = FOAF_NS + "knows"
SOCIAL_NS = "http://example.org/social#"

PROMPT_FORMAT_NAMES = {
    "turtle": "turtle",
    "jsonld": "JSON-LD",
    "ntriples": "N-Triples",
    "rdfxml": "RDF/XML",
}

_HOP_SEPARATORS = ("—", "->")


def node_key(text: str, prefixes: dict[str, str]) -> str:
    """Normalize a node name from an answer: <iri>, prefixed name, or value."""
    cell = text.strip()
    if cell.startswith("<") and cell.endswith(">") and len(cell) > 1:
        return cell[1:-1]
    if cell.startswith('"') and cell.endswith('"') and len(cell) > 1:
        return cell[1:-1]
    expanded = expand_prefixed(cell, prefixes)
    if expanded is not None:
        return expanded
    return cell


def _term_key(term: RdfTerm) -> str:
    if term.is_blank:
        return f"_:{term.value}"
    return term.value


def parse_hop_line(line: str) -> list[str] | None:
    """Parse one "subject — predicate — object" hop line."""
    for sep in _HOP_SEPARATORS:
        parts = [p.strip() for p in line.split(sep)]
        if len(parts) == 3 and all(parts):
            return parts
    parts = [p.strip() for p in re.split(r"\s+-\s+", line)]
    if len(parts) == 3 and all(parts):
        return parts
    return None


class RdfConnectionExplainTask(SinglePromptTask):
    """Name the chain of triples connecting two nodes (direction-agnostic)."""

    class_id = "RdfConnectionExplainStatic"
    supported_formats = GRAPH_FORMATS

    def __init__(self, parameters: dict, case: dict, case_index: int = 0):
        super().__init__(parameters, case_index)
        self.format = parameters.get("graphFormat", "turtle")
        if self.format not in self.supported_formats:
            raise TaskDataError(f"unsupported graphFormat {self.format!r}")
        self.graph = parse_graph(case["graphTurtle"], "turtle")
        self.graph_turtle = case["graphTurtle"]
        self.start_node = case["startNode"]
        self.end_node = case["endNode"]
        self.gold_path = [tuple(hop) for hop in case["goldPath"]]
        self.case_id = case.get("caseId", "")

    @classmethod
    def create(cls, parameters: dict, iteration_index: int, seed: int):
        container = load_container("connection_explain")
        entries = container["entries"]
        case = select_task_case(entries, iteration_index)
        return cls(parameters, case, case_index=iteration_index % len(entries))

    def _condensed_case(self) -> dict:
        return {
            "caseId": self.case_id,
            "graphTurtle": self.graph_turtle,
            "startNode": self.start_node,
            "endNode": self.end_node,
            "goldPath": [list(hop) for hop in self.gold_path],
        }

    @classmethod
    def _from_condensed_case(cls, parameters: dict, case: dict):
        return cls(parameters, case)

    def _display(self, iri_value: str) -> str:
        short = shrink_iri(iri_value, self.graph.prefixes)
        return short if short is not None else f"<{iri_value}>"

    def initial_prompt(self) -> str:
        doc = serialize_graph(self.graph, self.format)
        return (
            f"The following RDF graph in {PROMPT_FORMAT_NAMES[self.format]} syntax "
            "describes a small organization.\n\n"
            f"{fenced(doc, BLOCK_TAGS[self.format])}\n\n"
            f"Find a connection between {self._display(self.start_node)} and "
            f"{self._display(self.end_node)} in this graph.\n"
            "Answer with just one markdown fenced code block (start and end with ```) "
            "listing the connecting triples as path hops, one hop per line, each "
            'written as "subject — predicate — object". '
            "Use the node names as given in the graph, no other text."
        )

    def score_answer(self, answer: str) -> dict:
        brevity = brevity_score(answer)
        content, case = answer_block(answer)
        path_valid = 0.0
        if case == "ok" and content is not None:
            path_valid = self._path_validity(content)
        return {"pathValid": path_valid, "brevity": brevity, "combined": path_valid}

    def _path_validity(self, content: str) -> float:
        prefixes = self.graph.prefixes
        hops = []
        for line in content.splitlines():
            if not line.strip():
                continue
            parts = parse_hop_line(line)
            if parts is None:
                return 0.0
            hops.append(tuple(node_key(p, prefixes) for p in parts))
        if not hops:
            return 0.0
        if not self._chain_connects(hops):
            return 0.0
        triple_keys = {
            (_term_key(s), _term_key(p), _term_key(o)) for s, p, o in self.graph.triples
        }
        valid = sum(
            1
            for s, p, o in hops
            if (s, p, o) in triple_keys or (o, p, s) in triple_keys
        )
        return valid / len(hops)

    def _chain_connects(self, hops: list[tuple]) -> bool:
        def walk(start: str) -> str | None:
            cur = start
            for s, _p, o in hops:
                if s == cur:
                    cur = o
                elif o == cur:
                    cur = s
                else:
                    return None
            return cur

        return (
            walk(self.start_node) == self.end_node
            or walk(self.end_node) == self.start_node
        )

    def zero_scores(self) -> dict:
        return {"pathValid": 0.0, "brevity": 0.0, "combined": 0.0}

    def gold_answer(self, dialogue) -> str:
        lines = [
            f"{self._display(s)} — {self._display(p)} — {self._display(o)}"
            for s, p, o in self.gold_path
        ]
        return fenced("\n".join(lines))


class FriendGraphError(TaskDataError):
    """The friend-graph spec cannot be satisfied."""


@dataclass(frozen=True)
class FriendGraphSpec:
    person_count: int
    edge_count: int
    seed: int
    unique_max_margin: int = 2

    def __post_init__(self):
        if self.person_count < 2:
            raise FriendGraphError("personCount must be at least 2")
        if self.edge_count < self.person_count:
            raise FriendGraphError("edgeCount must be at least personCount")
        if self.unique_max_margin < 1:
            raise FriendGraphError("uniqueMaxMargin must be at least 1")


def generate_friend_graph(spec: FriendGraphSpec) -> tuple[RdfGraph, RdfTerm]:
    """Random foaf:knows graph with a unique in-degree winner.

    Deterministic under the spec seed. The winner's in-degree exceeds the
    runner-up by at least the configured margin.
    """
    rng = random.Random(spec.seed)
    n, e = spec.person_count, spec.edge_count
    people = [iri(f"{SOCIAL_NS}person{i + 1:02d}") for i in range(n)]
    winner_degree = min(n - 1, e)
    cap = winner_degree - spec.unique_max_margin
    remaining = e - winner_degree
    if remaining > 0 and cap <= 0:
        raise FriendGraphError("margin leaves no room for non-winner edges")
    if remaining > (n - 1) * max(cap, 0):
        raise FriendGraphError("edgeCount too large for margin and personCount")

    winner = rng.choice(people)
    others = [p for p in people if p != winner]
    graph = RdfGraph(prefixes={"foaf": FOAF_NS, "soc": SOCIAL_NS})
    knows = iri(FOAF_KNOWS)
    for person in people:
        graph.add(person, iri(RDF_TYPE), iri(FOAF_PERSON))
    for source in rng.sample(others, winner_degree):
        graph.add(source, knows, winner)
    candidates = [(a, b) for a in people for b in others if a != b]
    rng.shuffle(candidates)
    in_degree = {p.value: 0 for p in others}
    added = 0
    existing = {
        (s.value, o.value) for s, p, o in graph.triples if p.value == FOAF_KNOWS
    }
    for a, b in candidates:
        if added >= remaining:
            break
        if (a.value, b.value) in existing:
            continue
        if in_degree[b.value] + 1 > cap:
            continue
        graph.add(a, knows, b)
        existing.add((a.value, b.value))
        in_degree[b.value] += 1
        added += 1
    if added < remaining:
        raise FriendGraphError("could not place all edges under the margin cap")
    return graph, winner


class RdfFriendCountTask(SinglePromptTask):
    """Find the person with the most incoming foaf:knows edges."""

    class_id = "RdfFriendCount"
    supported_formats = GRAPH_FORMATS

    def __init__(self, parameters: dict, graph: RdfGraph, winner: RdfTerm, case_index: int = 0):
        super().__init__(parameters, case_index)
        self.format = parameters.get("graphFormat", "turtle")
        if self.format not in self.supported_formats:
            raise TaskDataError(f"unsupported graphFormat {self.format!r}")
        self.graph = graph
        self.winner = winner

    @classmethod
    def create(cls, parameters: dict, iteration_index: int, seed: int):
        spec = FriendGraphSpec(
            person_count=int(parameters.get("personCount", 10)),
            edge_count=int(parameters.get("edgeCount", 20)),
            seed=seed,
            unique_max_margin=int(parameters.get("uniqueMaxMargin", 2)),
        )
        graph, winner = generate_friend_graph(spec)
        return cls(parameters, graph, winner, case_index=0)

    def _condensed_case(self) -> dict:
        return {
            "graphNTriples": serialize_ntriples(self.graph),
            "prefixes": dict(self.graph.prefixes),
            "winner": self.winner.value,
        }

    @classmethod
    def _from_condensed_case(cls, parameters: dict, case: dict):
        graph = parse_ntriples(case["graphNTriples"])
        graph.prefixes.update(case.get("prefixes", {}))
        return cls(parameters, graph, iri(case["winner"]))

    def initial_prompt(self) -> str:
        doc = serialize_graph(self.graph, self.format)
        return (
            f"The following RDF graph in {PROMPT_FORMAT_NAMES[self.format]} syntax "
            "describes persons and who knows whom.\n\n"
            f"{fenced(doc, BLOCK_TAGS[self.format])}\n\n"
            "Which person has the most incoming foaf:knows edges, i.e. is known "
            "by the most other persons?\n"
            "Answer with just one markdown fenced code block (start and end with ```) "
            "containing exactly one node name (prefixed name or full IRI), no other text."
        )

    def score_answer(self, answer: str) -> dict:
        brevity = brevity_score(answer)
        content, case = answer_block(answer)
        correct = 0.0
        if case == "ok" and content is not None:
            tokens = content.split()
            if len(tokens) == 1:
                key = node_key(tokens[0], self.graph.prefixes)
                correct = 1.0 if key == self.winner.value else 0.0
        return {"answerCorrect": correct, "brevity": brevity, "combined": correct}

    def zero_scores(self) -> dict:
        return {"answerCorrect": 0.0, "brevity": 0.0, "combined": 0.0}

    def gold_answer(self, dialogue) -> str:
        short = shrink_iri(self.winner.value, self.graph.prefixes)
        return fenced(short if short is not None else f"<{self.winner.value}>")
