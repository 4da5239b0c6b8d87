"""Dialogue transcripts, score sets, iteration records, and persistence.

One iteration produces one canonical JSON record plus a human-readable
transcript text file. File names are derived from run id, task label,
model id and iteration index, so concurrent writers never collide.
"""

from __future__ import annotations

import json
import re
from dataclasses import asdict, dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterator, Optional

SOFTWARE_VERSION = "0.1.0"

_SCORE_EPS = 1e-9


class TranscriptError(ValueError):
    """A transcript violates the prompt/answer alternation invariant."""


@dataclass
class DialogueMessage:
    role: str  # "prompt" | "answer"
    content: str
    timestamp: str = ""

    def __post_init__(self):
        if self.role not in ("prompt", "answer"):
            raise TranscriptError(f"unknown dialogue role {self.role!r}")
        if not self.timestamp:
            self.timestamp = utc_now()


def utc_now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="milliseconds")


def validate_transcript(transcript: list[DialogueMessage]) -> None:
    """Transcripts alternate prompt, answer, prompt, answer, starting with prompt."""
    for i, message in enumerate(transcript):
        expected = "prompt" if i % 2 == 0 else "answer"
        if message.role != expected:
            raise TranscriptError(
                f"transcript message {i} has role {message.role!r}, expected {expected!r}"
            )


def answers(transcript: list[DialogueMessage]) -> list[str]:
    return [m.content for m in transcript if m.role == "answer"]


def prompts(transcript: list[DialogueMessage]) -> list[str]:
    return [m.content for m in transcript if m.role == "prompt"]


def validate_scores(scores: dict, require_combined: bool = True) -> dict:
    """Check all score values lie in [0, 1] (clamping float dust only)."""
    out = {}
    for name, value in scores.items():
        v = float(value)
        if not -_SCORE_EPS <= v <= 1 + _SCORE_EPS:
            raise ValueError(f"score {name!r}={value} outside [0, 1]")
        out[name] = min(1.0, max(0.0, v))
    if require_combined and "combined" not in out:
        raise ValueError("score set is missing the 'combined' score")
    return out


def task_label(task_class_id: str, parameters: dict) -> str:
    """Stable label for a parameterized task, safe for file names and CSV."""
    if not parameters:
        return task_class_id
    inner = ",".join(f"{k}={parameters[k]}" for k in sorted(parameters))
    return f"{task_class_id}[{inner}]"


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9._,\[\]=-]+", "_", text) or "_"


@dataclass
class IterationRecord:
    run_id: str
    model_id: str
    task_class_id: str
    task_parameters: dict
    case_index: int
    iteration_index: int
    transcript: list = field(default_factory=list)  # list[DialogueMessage]
    scores: dict = field(default_factory=dict)
    condensed_task_data: str = ""
    software_version: str = SOFTWARE_VERSION
    failed: bool = False
    error: Optional[str] = None
    model_calls: list = field(default_factory=list)  # latency/usage metadata

    @property
    def label(self) -> str:
        return task_label(self.task_class_id, self.task_parameters)

    def to_json(self) -> str:
        doc = asdict(self)
        return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "IterationRecord":
        doc = json.loads(text)
        doc["transcript"] = [DialogueMessage(**m) for m in doc.get("transcript", [])]
        return cls(**doc)


def transcript_text(record: IterationRecord) -> str:
    """Plain-text rendering of one iteration for human review."""
    lines = [
        f"run: {record.run_id}",
        f"task: {record.label}",
        f"model: {record.model_id}",
        f"iteration: {record.iteration_index} (case {record.case_index})",
        "",
    ]
    for message in record.transcript:
        header = "PROMPT" if message.role == "prompt" else "ANSWER"
        lines.append(f"--- {header} [{message.timestamp}] ---")
        lines.append(message.content)
        lines.append("")
    lines.append("--- SCORES ---")
    for name in sorted(record.scores):
        lines.append(f"{name}={record.scores[name]:g}")
    if record.failed:
        lines.append(f"FAILED: {record.error or 'unknown error'}")
    return "\n".join(lines) + "\n"


def record_paths(record: IterationRecord, out_dir: Path) -> tuple[Path, Path]:
    base = (
        Path(out_dir)
        / _slug(record.run_id)
        / _slug(record.label)
        / _slug(record.model_id)
    )
    stem = f"iteration-{record.iteration_index:04d}"
    return base / f"{stem}.json", base / f"{stem}.txt"


def persist_iteration(record: IterationRecord, out_dir: Path) -> tuple[Path, Path]:
    """Write the canonical JSON record and the transcript text file."""
    json_path, txt_path = record_paths(record, out_dir)
    json_path.parent.mkdir(parents=True, exist_ok=True)
    json_path.write_text(record.to_json(), encoding="utf-8")
    txt_path.write_text(transcript_text(record), encoding="utf-8")
    return json_path, txt_path


def write_yaml_export(record: IterationRecord, out_dir: Path) -> Path:
    """Optional YAML twin of the canonical JSON record (same schema)."""
    import yaml

    json_path, _ = record_paths(record, out_dir)
    path = json_path.with_suffix(".yaml")
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(
        yaml.safe_dump(json.loads(record.to_json()), sort_keys=True),
        encoding="utf-8",
    )
    return path


def iter_records(results_dir: Path) -> Iterator[IterationRecord]:
    """Load every persisted iteration record under a results directory."""
    for path in sorted(Path(results_dir).rglob("iteration-*.json")):
        yield IterationRecord.from_json(path.read_text(encoding="utf-8"))
