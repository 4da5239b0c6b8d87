"""Command-line interface.

Subcommands: run (execute a benchmark configuration), reeval (recompute
scores from persisted transcripts), plot (tables and compass plots),
list-tasks, list-models.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .analytics import (
    AnalyticsError,
    aggregate_dimensions,
    export_preferences,
    export_summary,
    render_compass,
)
from .config import ConfigError, load_config
from .records import iter_records
from .runner import reevaluate, run_benchmark
from .tasks import TASK_CLASSES, list_task_ids


def _csv_list(text: str | None) -> list[str] | None:
    if not text:
        return None
    return [part.strip() for part in text.split(",") if part.strip()]


def _cmd_run(args) -> int:
    config = load_config(args.config)
    if args.iterations is not None:
        config.iterations = args.iterations
    if args.seed is not None:
        config.seed = args.seed
    if args.parallel is not None:
        config.parallelism = args.parallel
    summary = run_benchmark(
        config,
        task_filter=_csv_list(args.tasks),
        model_filter=_csv_list(args.models),
        out_dir=Path(args.out) if args.out else None,
    )
    print(f"run directory: {summary.output_dir}")
    print(
        f"executions: {summary.executions}, iterations: {summary.iterations}, "
        f"failures: {summary.failures}"
    )
    return 1 if summary.iterations == 0 else 0


def _cmd_reeval(args) -> int:
    summary = reevaluate(Path(args.results), Path(args.out))
    print(f"re-evaluated {summary.iterations} records into {summary.output_dir}")
    if summary.skipped:
        print(f"skipped {summary.skipped} records:")
        for note in summary.notes:
            print(f"  - {note}")
    return 0


def _cmd_plot(args) -> int:
    out = Path(args.out)
    records = list(iter_records(Path(args.results)))
    if not records:
        print(f"no iteration records under {args.results}", file=sys.stderr)
        return 1
    summary_path = export_summary(records, out)
    print(f"wrote {summary_path}")
    preferences_path = export_preferences(records, out)
    print(f"wrote {preferences_path}")
    for model_id in sorted({r.model_id for r in records}):
        try:
            aggregate = aggregate_dimensions(records, model_id=model_id)
        except AnalyticsError as exc:
            print(f"skipping compass for {model_id}: {exc}", file=sys.stderr)
            continue
        svg = render_compass(aggregate.values, aggregate.labels, model_id)
        path = out / f"compass-{model_id}.svg"
        path.write_text(svg, encoding="utf-8")
        print(f"wrote {path}")
        for note in aggregate.missing:
            print(f"  note ({model_id}): {note}", file=sys.stderr)
    return 0


def _cmd_list_tasks(_args) -> int:
    for class_id in list_task_ids():
        cls = TASK_CLASSES[class_id]
        kind = "dialogue" if cls.dialogue_task else "single-prompt"
        formats = ",".join(cls.supported_formats) if cls.supported_formats else "-"
        print(f"{class_id}\t{kind}\tmaxRounds={cls.max_rounds}\tgraphFormat: {formats}")
    return 0


def _cmd_list_models(args) -> int:
    config = load_config(args.config)
    for model in config.models:
        print(f"{model.model_id}\tconnector={model.connector_id}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kgbench",
        description="Benchmark chat LLMs on knowledge-graph engineering tasks.",
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="execute a benchmark configuration")
    run.add_argument("--config", required=True, help="YAML configuration file")
    run.add_argument("--tasks", help="comma-separated task selection")
    run.add_argument("--models", help="comma-separated model selection")
    run.add_argument("--iterations", type=int, help="override iterations per execution")
    run.add_argument("--seed", type=int, help="override the run seed")
    run.add_argument("--parallel", type=int, help="override parallelism")
    run.add_argument("--out", help="output directory (default from config)")
    run.set_defaults(func=_cmd_run)

    reeval = sub.add_parser("reeval", help="recompute scores from stored transcripts")
    reeval.add_argument("--results", required=True, help="existing run directory")
    reeval.add_argument("--out", required=True, help="directory for new records")
    reeval.set_defaults(func=_cmd_reeval)

    plot = sub.add_parser("plot", help="export tables and compass plots")
    plot.add_argument("--results", required=True, help="run directory with records")
    plot.add_argument("--out", required=True, help="directory for CSV/SVG output")
    plot.set_defaults(func=_cmd_plot)

    list_tasks = sub.add_parser("list-tasks", help="list registered task classes")
    list_tasks.set_defaults(func=_cmd_list_tasks)

    list_models = sub.add_parser("list-models", help="list models from a config")
    list_models.add_argument("--config", required=True)
    list_models.set_defaults(func=_cmd_list_models)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
