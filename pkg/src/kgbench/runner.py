"""Benchmark orchestration: the prompt-answer-evaluate loop across scopes.

A run executes every configured (task, model) pair for the configured
number of iterations, persisting one record per iteration. Re-evaluation
replays persisted transcripts through the evaluation code only; no model
is ever called.
"""

from __future__ import annotations

import hashlib
import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from .config import BenchmarkConfig, apply_filters, validate_config
from .connectors import Connector, create_connector, handle_from_config
from .records import (
    SOFTWARE_VERSION,
    DialogueMessage,
    IterationRecord,
    iter_records,
    persist_iteration,
    utc_now,
)
from .tasks import TaskError, create_task, task_from_condensed
from .tasks.base import select_task_case  # re-export for the op surface

__all__ = [
    "RunSummary",
    "child_seed",
    "reevaluate",
    "run_benchmark",
    "run_iteration",
    "select_task_case",
]

log = logging.getLogger("kgbench")


@dataclass
class RunSummary:
    run_id: str
    output_dir: str
    executions: int = 0
    iterations: int = 0
    failures: int = 0
    skipped: int = 0
    notes: list = field(default_factory=list)


def child_seed(run_seed: int, label: str, model_id: str, iteration_index: int) -> int:
    """Stable per-iteration seed: reproducible under any parallelism."""
    key = f"{run_seed}:{label}:{model_id}:{iteration_index}".encode("utf-8")
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


def run_iteration(
    task, connector: Connector, max_rounds: int | None = None
) -> tuple[list[DialogueMessage], dict]:
    """One prompt-answer-evaluate loop; returns (transcript, scores).

    The loop asks the task for the next prompt, sends the full transcript to
    the model, appends the answer, and repeats until the task stops or the
    round budget is exhausted; then the task's finalize step scores it.
    """
    budget = max_rounds if max_rounds is not None else getattr(task, "max_rounds", 1)
    if budget < 1:
        raise TaskError("maxRounds must be at least 1")
    transcript: list[DialogueMessage] = []
    rounds = 0
    while rounds < budget:
        prompt = task.get_next_prompt(transcript)
        if prompt is None:
            break
        transcript.append(DialogueMessage("prompt", prompt))
        answer = connector.generate_text(transcript)
        transcript.append(DialogueMessage("answer", answer))
        rounds += 1
    scores = task.finalize_evaluation(transcript)
    return transcript, scores


def _new_run_id(seed: int) -> str:
    stamp = datetime.now(timezone.utc).strftime("%Y%m%d-%H%M%S")
    return f"run-{stamp}-s{seed}"


def _write_manifest(
    run_dir: Path,
    config: BenchmarkConfig,
    task_filter,
    model_filter,
    run_id: str,
) -> None:
    manifest = {
        "runId": run_id,
        "softwareVersion": SOFTWARE_VERSION,
        "startedAt": utc_now(),
        "seed": config.seed,
        "iterationsPerExecution": config.iterations,
        "parallelism": config.parallelism,
        "taskFilter": task_filter,
        "modelFilter": model_filter,
        "tasks": [
            {"class": t.task_class_id, "parameters": t.parameters} for t in config.tasks
        ],
        "models": [
            {
                "id": m.model_id,
                "connector": m.connector_id,
                # credentials stay in the environment; record the rest
                "parameters": {
                    k: v for k, v in m.connector_params.items() if "key" not in k.lower()
                },
            }
            for m in config.models
        ],
    }
    run_dir.mkdir(parents=True, exist_ok=True)
    (run_dir / "manifest.json").write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


def run_benchmark(
    config: BenchmarkConfig,
    task_filter: list[str] | None = None,
    model_filter: list[str] | None = None,
    out_dir: Path | None = None,
    run_id: str | None = None,
) -> RunSummary:
    """Execute all (task, model) pairs surviving the filters."""
    validate_config(config)
    selected = apply_filters(config, task_filter, model_filter)
    out = Path(out_dir) if out_dir is not None else Path(config.output_dir)
    run_id = run_id or _new_run_id(config.seed)
    run_dir = out / run_id
    # fail on unwritable output before any model call
    _write_manifest(run_dir, selected, task_filter, model_filter, run_id)

    connectors = {
        m.model_id: create_connector(
            handle_from_config(m.model_id, m.connector_id, m.connector_params)
        )
        for m in selected.models
    }
    summary = RunSummary(run_id=run_id, output_dir=str(run_dir))
    units = [
        (task_entry, model_entry, iteration)
        for task_entry in selected.tasks
        for model_entry in selected.models
        for iteration in range(selected.iterations)
    ]
    summary.executions = len(selected.tasks) * len(selected.models)

    def execute(unit) -> IterationRecord:
        task_entry, model_entry, iteration = unit
        label = task_entry.label
        seed = child_seed(selected.seed, label, model_entry.model_id, iteration)
        connector = connectors[model_entry.model_id]
        record = IterationRecord(
            run_id=run_id,
            model_id=model_entry.model_id,
            task_class_id=task_entry.task_class_id,
            task_parameters=task_entry.parameters,
            case_index=0,
            iteration_index=iteration,
        )
        try:
            task = create_task(task_entry.task_class_id, task_entry.parameters, iteration, seed)
            record.case_index = task.case_index
            record.condensed_task_data = task.condense_task_data()
            bind = getattr(connector, "bind_task", None)
            if bind is not None:
                bind(task)
            transcript, scores = run_iteration(task, connector)
            record.transcript = transcript
            record.scores = scores
        except Exception as exc:  # connector/task failure: record and continue
            log.warning(
                "iteration failed: %s %s #%d: %s", label, model_entry.model_id, iteration, exc
            )
            record.failed = True
            record.error = f"{type(exc).__name__}: {exc}"
            record.scores = {"combined": 0.0}
        record.model_calls = connector.drain_metadata()
        persist_iteration(record, out)
        return record

    if selected.parallelism > 1:
        with ThreadPoolExecutor(max_workers=selected.parallelism) as pool:
            records = list(pool.map(execute, units))
    else:
        records = [execute(u) for u in units]

    summary.iterations = len(records)
    summary.failures = sum(1 for r in records if r.failed)
    return summary


def reevaluate(results_dir: Path, out_dir: Path) -> RunSummary:
    """Recompute scores from persisted transcripts; zero model calls.

    Each record's task is rebuilt from its condensed data and its stored
    transcript is replayed through finalize_evaluation. Idempotent.
    """
    results_dir = Path(results_dir)
    out = Path(out_dir)
    summary = RunSummary(run_id="reeval", output_dir=str(out))
    seen_runs = set()
    for record in iter_records(results_dir):
        seen_runs.add(record.run_id)
        if not record.condensed_task_data:
            summary.skipped += 1
            summary.notes.append(
                f"{record.label}/{record.model_id}#{record.iteration_index}: "
                "no condensed task data"
            )
            continue
        try:
            task = task_from_condensed(record.condensed_task_data)
            record.scores = task.finalize_evaluation(record.transcript)
            record.failed = False
            record.error = None
        except (TaskError, ValueError) as exc:
            summary.skipped += 1
            summary.notes.append(
                f"{record.label}/{record.model_id}#{record.iteration_index}: {exc}"
            )
            log.warning("reevaluation skipped a record: %s", exc)
            continue
        persist_iteration(record, out)
        summary.iterations += 1
    if len(seen_runs) == 1:
        summary.run_id = next(iter(seen_runs))
    # carry over manifests so a re-evaluated directory stays self-describing
    for manifest in sorted(results_dir.rglob("manifest.json")):
        target = out / manifest.relative_to(results_dir)
        if not target.exists():
            target.parent.mkdir(parents=True, exist_ok=True)
            target.write_text(manifest.read_text(encoding="utf-8"), encoding="utf-8")
    return summary
