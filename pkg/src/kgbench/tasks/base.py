"""Task API: the contract between the runner and the task classes.

A task drives one evaluation iteration. get_next_prompt combines the
evaluate and prompt steps: given the transcript so far it either returns
the next prompt or None to end the loop; finalize_evaluation then turns the
finished transcript into a score set. condense_task_data /
from_condensed_data serialize one concrete task case for later
re-evaluation without the original data files.
"""

from __future__ import annotations

import json
from typing import ClassVar, Optional

from ..records import DialogueMessage, answers, validate_scores, validate_transcript
from ..text import FormatViolation, brevity_score, extract_fenced_block


class TaskError(RuntimeError):
    pass


class TaskDataError(TaskError):
    """The task's case data violates the task contract."""


class BenchTask:
    class_id: ClassVar[str] = ""
    max_rounds: ClassVar[int] = 1
    # graph formats the class accepts for its graphFormat parameter;
    # empty tuple means the parameter is rejected
    supported_formats: ClassVar[tuple] = ()
    dialogue_task: ClassVar[bool] = False

    def __init__(self, parameters: dict, case_index: int = 0):
        self.parameters = dict(parameters)
        self.case_index = case_index

    # --- Task API ----------------------------------------------------
    @classmethod
    def create(cls, parameters: dict, iteration_index: int, seed: int) -> "BenchTask":
        """Build the task instance for one iteration (selects the case)."""
        raise NotImplementedError

    def get_next_prompt(self, transcript: list[DialogueMessage]) -> Optional[str]:
        raise NotImplementedError

    def finalize_evaluation(self, transcript: list[DialogueMessage]) -> dict:
        raise NotImplementedError

    def condense_task_data(self) -> str:
        """Serializable representation of this concrete task case."""
        return json.dumps(
            {
                "taskClassId": self.class_id,
                "parameters": self.parameters,
                "caseIndex": self.case_index,
                "case": self._condensed_case(),
            },
            sort_keys=True,
        )

    @classmethod
    def from_condensed_data(cls, condensed: str) -> "BenchTask":
        doc = json.loads(condensed)
        if doc.get("taskClassId") != cls.class_id:
            raise TaskDataError(
                f"condensed data is for {doc.get('taskClassId')!r}, not {cls.class_id!r}"
            )
        task = cls._from_condensed_case(doc.get("parameters", {}), doc.get("case", {}))
        task.case_index = int(doc.get("caseIndex", 0))
        return task

    def gold_answer(self, dialogue: list[DialogueMessage]) -> str:
        """The reference answer for the pending prompt (self-check oracle)."""
        raise NotImplementedError

    # --- subclass hooks ----------------------------------------------
    def _condensed_case(self) -> dict:
        raise NotImplementedError

    @classmethod
    def _from_condensed_case(cls, parameters: dict, case: dict) -> "BenchTask":
        raise NotImplementedError


def select_task_case(entries: list, iteration_index: int):
    """Round-robin case selection: entries[iterationIndex mod len(entries)]."""
    if not entries:
        raise TaskDataError("task has an empty case-entry list")
    if iteration_index < 0:
        raise TaskDataError("iteration index must be non-negative")
    return entries[iteration_index % len(entries)]


def fenced(content: str, tag: str = "") -> str:
    body = content if content.endswith("\n") else content + "\n"
    return f"```{tag}\n{body}```"


def answer_block(answer: str) -> tuple[Optional[str], str]:
    """(block content, case) where case is "ok", "zero" or "multiple".

    For "multiple" the largest block's content is returned so scoring can
    still look at the most plausible candidate; for "zero" content is None.
    """
    try:
        content, _tag, _extra = extract_fenced_block(answer)
        return content, "ok"
    except FormatViolation as violation:
        if violation.case == "zero":
            return None, "zero"
        blocks = violation.extraction.blocks
        largest = max(blocks, key=lambda b: sum(1 for c in b.content if not c.isspace()))
        return largest.content, "multiple"


class SinglePromptTask(BenchTask):
    """One prompt, one answer, then evaluation."""

    max_rounds = 1

    def initial_prompt(self) -> str:
        raise NotImplementedError

    def score_answer(self, answer: str) -> dict:
        raise NotImplementedError

    def zero_scores(self) -> dict:
        raise NotImplementedError

    def get_next_prompt(self, transcript: list[DialogueMessage]) -> Optional[str]:
        validate_transcript(transcript)
        if not transcript:
            return self.initial_prompt()
        return None

    def finalize_evaluation(self, transcript: list[DialogueMessage]) -> dict:
        validate_transcript(transcript)
        got = answers(transcript)
        if not got:
            scores = self.zero_scores()
        else:
            scores = self.score_answer(got[-1])
        return validate_scores(scores)


class DialogueFixTask(BenchTask):
    """Correction-loop task: re-prompt on format or syntax failures.

    Subclasses provide the initial prompt, a per-answer check, round scores
    and the correction prompts. The loop runs for at most max_rounds
    prompt-answer rounds.
    """

    max_rounds = 3
    dialogue_task = True

    def initial_prompt(self) -> str:
        raise NotImplementedError

    def check_answer(self, answer: str) -> Optional[str]:
        """None when the answer is acceptable, else the follow-up prompt."""
        raise NotImplementedError

    def round_scores(self, answer: str) -> dict:
        raise NotImplementedError

    def zero_scores(self) -> dict:
        raise NotImplementedError

    def get_next_prompt(self, transcript: list[DialogueMessage]) -> Optional[str]:
        validate_transcript(transcript)
        if not transcript:
            return self.initial_prompt()
        if transcript[-1].role != "answer":
            raise TaskError("get_next_prompt called mid-round (last message is a prompt)")
        rounds_done = len(answers(transcript))
        follow_up = self.check_answer(transcript[-1].content)
        if follow_up is None or rounds_done >= self.max_rounds:
            return None
        return follow_up

    def finalize_evaluation(self, transcript: list[DialogueMessage]) -> dict:
        validate_transcript(transcript)
        got = answers(transcript)
        if not got:
            return validate_scores(self.zero_scores())
        scores = dict(self.round_scores(got[-1]))
        # keep every round's component scores under suffixed names
        for i, answer in enumerate(got, start=1):
            for name, value in self.round_scores(answer).items():
                scores[f"{name}.round{i}"] = value
        return validate_scores(scores)
