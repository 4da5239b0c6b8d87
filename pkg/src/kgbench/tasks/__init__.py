"""Task registry: the nine benchmark task classes keyed by class id."""

from __future__ import annotations

import json

from .base import BenchTask, TaskDataError, TaskError, select_task_case
from .rdf_analytics import RdfConnectionExplainTask, RdfFriendCountTask
from .rdf_fix import RdfSyntaxFixTask
from .rdf_generate import FactExtractTask, TurtleSampleGenerationTask
from .sparql_tasks import (
    Sparql2AnswerTask,
    SparqlSyntaxFixTask,
    Text2AnswerTask,
    Text2SparqlTask,
)

TASK_CLASSES: dict[str, type] = {
    cls.class_id: cls
    for cls in (
        FactExtractTask,
        RdfConnectionExplainTask,
        RdfFriendCountTask,
        RdfSyntaxFixTask,
        TurtleSampleGenerationTask,
        Sparql2AnswerTask,
        Text2AnswerTask,
        Text2SparqlTask,
        SparqlSyntaxFixTask,
    )
}


def get_task_class(class_id: str) -> type:
    try:
        return TASK_CLASSES[class_id]
    except KeyError:
        raise TaskError(f"unknown task class {class_id!r}") from None


def create_task(class_id: str, parameters: dict, iteration_index: int, seed: int) -> BenchTask:
    return get_task_class(class_id).create(parameters, iteration_index, seed)


def task_from_condensed(condensed: str) -> BenchTask:
    try:
        doc = json.loads(condensed)
    except json.JSONDecodeError as exc:
        raise TaskDataError(f"condensed task data is not valid JSON: {exc}") from exc
    class_id = doc.get("taskClassId")
    return get_task_class(class_id).from_condensed_data(condensed)


def list_task_ids() -> list[str]:
    return sorted(TASK_CLASSES)


__all__ = [
    "BenchTask",
    "TASK_CLASSES",
    "TaskDataError",
    "TaskError",
    "create_task",
    "get_task_class",
    "list_task_ids",
    "select_task_case",
    "task_from_condensed",
]
