"""Score aggregation into capability dimensions.

A dimension value is the unweighted mean over its contributing (task class,
score) pairs of the per-task mean of that score across a model's
iterations. Pairs without records are reported, never silently zeroed.
"""

from __future__ import annotations

from dataclasses import dataclass, field


class AnalyticsError(RuntimeError):
    pass


class EmptyResultError(AnalyticsError):
    """No records exist for the requested model."""


@dataclass(frozen=True)
class DimensionSpec:
    label: str
    contributing: tuple  # tuple[(task_class_id, score_name), ...]


_ALL_TASK_CLASSES = (
    "FactExtractStatic",
    "RdfConnectionExplainStatic",
    "RdfFriendCount",
    "RdfSyntaxFixList",
    "TurtleSampleGeneration",
    "Sparql2AnswerList",
    "Text2AnswerList",
    "Text2SparqlList",
    "SparqlSyntaxFixingList",
)

# The five default axes, in display order.
DEFAULT_DIMENSIONS = (
    DimensionSpec("Brev", tuple((cid, "brevity") for cid in _ALL_TASK_CLASSES)),
    DimensionSpec(
        "R-Syn",
        (
            ("RdfSyntaxFixList", "parsableSyntax"),
            ("FactExtractStatic", "parsableSyntax"),
            ("TurtleSampleGeneration", "parsableSyntax"),
        ),
    ),
    DimensionSpec(
        "R-Ana",
        (
            ("RdfConnectionExplainStatic", "combined"),
            ("RdfFriendCount", "combined"),
        ),
    ),
    DimensionSpec(
        "S-Sem",
        (
            ("Sparql2AnswerList", "resultF1"),
            ("Text2AnswerList", "resultF1"),
            ("Text2SparqlList", "resultF1"),
        ),
    ),
    DimensionSpec(
        "S-Syn",
        (
            ("SparqlSyntaxFixingList", "querySyntax"),
            ("Text2SparqlList", "querySyntax"),
        ),
    ),
)


@dataclass
class DimensionAggregate:
    model_id: str
    labels: list
    values: list
    missing: list = field(default_factory=list)  # "(class, score)" notes


def aggregate_dimensions(
    records,
    config=DEFAULT_DIMENSIONS,
    model_id: str = "",
) -> DimensionAggregate:
    """Aggregate a model's iteration records into dimension values.

    Raises EmptyResultError when the model has no records at all, and
    AnalyticsError when a whole dimension has no contributing data.
    """
    mine = [r for r in records if not model_id or r.model_id == model_id]
    if not mine:
        raise EmptyResultError(f"no records for model {model_id!r}")
    by_class: dict[str, list] = {}
    for record in mine:
        by_class.setdefault(record.task_class_id, []).append(record)

    labels = []
    values = []
    missing = []
    uncovered = []
    for dim in config:
        task_means = []
        for class_id, score_name in dim.contributing:
            scores = [
                r.scores[score_name]
                for r in by_class.get(class_id, [])
                if score_name in r.scores
            ]
            if not scores:
                missing.append(f"{dim.label}: no {score_name!r} scores for {class_id}")
                continue
            task_means.append(sum(scores) / len(scores))
        if not task_means:
            uncovered.append(dim.label)
            values.append(0.0)
        else:
            values.append(sum(task_means) / len(task_means))
        labels.append(dim.label)
    if uncovered:
        raise AnalyticsError(
            f"model {model_id!r} has no data for dimension(s): {', '.join(uncovered)}"
        )
    return DimensionAggregate(model_id=model_id, labels=labels, values=values, missing=missing)
