"""CSV table export over persisted iteration records.

summary.csv: one row per model; columns are task.score.statistic with
mean/stddev/min/max per task and score, sorted lexicographically.
preferences.csv: Turtle-vs-JSON-LD Welch verdicts per task class and model.
"""

from __future__ import annotations

import csv
import math
from pathlib import Path

from .stats import InsufficientSamplesError, format_preference_test

_STATISTICS = ("max", "mean", "min", "stddev")


def _fmt(value: float) -> str:
    return f"{value:.10g}"


def _stddev(values) -> float:
    if len(values) < 2:
        return 0.0
    m = sum(values) / len(values)
    return math.sqrt(sum((v - m) ** 2 for v in values) / (len(values) - 1))


def _stat(name: str, values) -> float:
    if name == "mean":
        return sum(values) / len(values)
    if name == "stddev":
        return _stddev(values)
    if name == "min":
        return min(values)
    return max(values)


def summary_table(records) -> list[list[str]]:
    """Rows (header first) of the per-task per-model score statistics."""
    samples: dict[tuple[str, str, str], list] = {}
    models = set()
    for record in records:
        models.add(record.model_id)
        for score_name, value in record.scores.items():
            samples.setdefault((record.model_id, record.label, score_name), []).append(value)
    columns = sorted(
        {
            f"{label}.{score}.{stat}"
            for (_model, label, score) in samples
            for stat in _STATISTICS
        }
    )
    header = ["modelId"] + columns
    rows = [header]
    for model in sorted(models):
        row = [model]
        for column in columns:
            label, score, stat = column.rsplit(".", 2)
            values = samples.get((model, label, score))
            row.append(_fmt(_stat(stat, values)) if values else "")
        rows.append(row)
    return rows


def _write_csv(rows: list[list[str]], path: Path) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerows(rows)
    return path


def export_summary(records, out_dir: Path) -> Path:
    return _write_csv(summary_table(list(records)), Path(out_dir) / "summary.csv")


def preference_table(records, score_name: str = "combined") -> list[list[str]]:
    """Turtle-vs-JSON-LD preference rows for every eligible (class, model)."""
    by_group: dict[tuple[str, str, str], list] = {}
    for record in records:
        fmt = record.task_parameters.get("graphFormat")
        if fmt not in ("turtle", "jsonld"):
            continue
        if score_name not in record.scores:
            continue
        key = (record.task_class_id, record.model_id, fmt)
        by_group.setdefault(key, []).append(record.scores[score_name])
    pairs = sorted(
        {
            (class_id, model_id)
            for (class_id, model_id, _fmt_key) in by_group
            if (class_id, model_id, "turtle") in by_group
            and (class_id, model_id, "jsonld") in by_group
        }
    )
    rows = [["taskClassId", "modelId", "meanTurtle", "meanJsonld", "pValue", "verdict"]]
    for class_id, model_id in pairs:
        ttl = by_group[(class_id, model_id, "turtle")]
        jsn = by_group[(class_id, model_id, "jsonld")]
        try:
            result = format_preference_test(ttl, jsn, class_id, model_id)
        except InsufficientSamplesError:
            rows.append(
                [
                    class_id,
                    model_id,
                    _fmt(sum(ttl) / len(ttl)),
                    _fmt(sum(jsn) / len(jsn)),
                    "",
                    "insufficient",
                ]
            )
            continue
        rows.append(
            [
                class_id,
                model_id,
                _fmt(result.mean_turtle),
                _fmt(result.mean_jsonld),
                _fmt(result.p_value),
                result.verdict,
            ]
        )
    return rows


def export_preferences(records, out_dir: Path, score_name: str = "combined") -> Path:
    return _write_csv(
        preference_table(list(records), score_name), Path(out_dir) / "preferences.csv"
    )
