"""Benchmark configuration: YAML loading and validation.

Top-level keys: tasks, models, iterations, seed, parallelism (plus an
optional output directory). Validation resolves every task class and
connector id before any model is called.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from .connectors import CONNECTOR_IDS
from .tasks import TASK_CLASSES


class ConfigError(ValueError):
    pass


@dataclass
class TaskSpecEntry:
    task_class_id: str
    parameters: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        from .records import task_label

        return task_label(self.task_class_id, self.parameters)


@dataclass
class ModelSpecEntry:
    model_id: str
    connector_id: str
    connector_params: dict = field(default_factory=dict)


@dataclass
class BenchmarkConfig:
    tasks: list = field(default_factory=list)  # list[TaskSpecEntry]
    models: list = field(default_factory=list)  # list[ModelSpecEntry]
    iterations: int = 1
    seed: int = 0
    parallelism: int = 1
    output_dir: Path = Path("runs")

    def task_ids(self) -> list[str]:
        return [t.label for t in self.tasks]

    def model_ids(self) -> list[str]:
        return [m.model_id for m in self.models]


def _as_str_map(value, what: str) -> dict:
    if value is None:
        return {}
    if not isinstance(value, dict):
        raise ConfigError(f"{what} must be a mapping")
    return {str(k): str(v) for k, v in value.items()}


def parse_config(doc: dict, base_dir: Path | None = None) -> BenchmarkConfig:
    if not isinstance(doc, dict):
        raise ConfigError("configuration root must be a mapping")
    tasks = []
    for i, entry in enumerate(doc.get("tasks") or []):
        if isinstance(entry, str):
            tasks.append(TaskSpecEntry(entry))
            continue
        if not isinstance(entry, dict) or "class" not in entry:
            raise ConfigError(f"tasks[{i}] needs a 'class' key")
        tasks.append(
            TaskSpecEntry(
                str(entry["class"]),
                _as_str_map(entry.get("parameters"), f"tasks[{i}].parameters"),
            )
        )
    models = []
    for i, entry in enumerate(doc.get("models") or []):
        if not isinstance(entry, dict) or "id" not in entry or "connector" not in entry:
            raise ConfigError(f"models[{i}] needs 'id' and 'connector' keys")
        models.append(
            ModelSpecEntry(
                str(entry["id"]),
                str(entry["connector"]),
                _as_str_map(entry.get("parameters"), f"models[{i}].parameters"),
            )
        )
    output = doc.get("output", "runs")
    output_dir = Path(output)
    if base_dir is not None and not output_dir.is_absolute():
        output_dir = Path(base_dir) / output_dir
    config = BenchmarkConfig(
        tasks=tasks,
        models=models,
        iterations=int(doc.get("iterations", 1)),
        seed=int(doc.get("seed", 0)),
        parallelism=int(doc.get("parallelism", 1)),
        output_dir=output_dir,
    )
    validate_config(config)
    return config


def load_config(path: Path) -> BenchmarkConfig:
    path = Path(path)
    try:
        doc = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise ConfigError(f"cannot parse config {path}: {exc}") from exc
    return parse_config(doc, base_dir=path.parent)


def validate_config(config: BenchmarkConfig) -> None:
    if config.iterations < 1:
        raise ConfigError("iterations must be at least 1")
    if config.parallelism < 1:
        raise ConfigError("parallelism must be at least 1")
    if config.seed < 0 or config.seed >= 2**64:
        raise ConfigError("seed must fit in 64 unsigned bits")
    if not config.tasks:
        raise ConfigError("configuration defines no tasks")
    if not config.models:
        raise ConfigError("configuration defines no models")
    labels = set()
    for entry in config.tasks:
        cls = TASK_CLASSES.get(entry.task_class_id)
        if cls is None:
            raise ConfigError(f"unknown task class {entry.task_class_id!r}")
        fmt = entry.parameters.get("graphFormat")
        if fmt is not None:
            if not cls.supported_formats:
                raise ConfigError(
                    f"{entry.task_class_id} does not accept a graphFormat parameter"
                )
            if fmt not in cls.supported_formats:
                raise ConfigError(
                    f"{entry.task_class_id} does not accept graphFormat {fmt!r} "
                    f"(allowed: {', '.join(cls.supported_formats)})"
                )
        if entry.label in labels:
            raise ConfigError(f"duplicate task entry {entry.label!r}")
        labels.add(entry.label)
    model_ids = set()
    for entry in config.models:
        if entry.connector_id not in CONNECTOR_IDS:
            raise ConfigError(f"unknown connector {entry.connector_id!r}")
        if entry.model_id in model_ids:
            raise ConfigError(f"duplicate model id {entry.model_id!r}")
        model_ids.add(entry.model_id)


def apply_filters(
    config: BenchmarkConfig,
    task_filter: list[str] | None,
    model_filter: list[str] | None,
) -> BenchmarkConfig:
    """Restrict to a selection of tasks/models; unknown ids are an error.

    Task filters match either the bare class id or the full label.
    """
    tasks = config.tasks
    if task_filter:
        known = {t.label for t in config.tasks} | {t.task_class_id for t in config.tasks}
        for name in task_filter:
            if name not in known:
                raise ConfigError(f"task filter {name!r} matches no configured task")
        tasks = [
            t for t in config.tasks if t.label in task_filter or t.task_class_id in task_filter
        ]
    models = config.models
    if model_filter:
        known_models = {m.model_id for m in config.models}
        for name in model_filter:
            if name not in known_models:
                raise ConfigError(f"model filter {name!r} matches no configured model")
        models = [m for m in config.models if m.model_id in model_filter]
    return BenchmarkConfig(
        tasks=tasks,
        models=models,
        iterations=config.iterations,
        seed=config.seed,
        parallelism=config.parallelism,
        output_dir=config.output_dir,
    )
