"""Task-data containers: encrypted canonical files with plaintext fallback.

A container is a JSON document. The canonical shipped form is encrypted
(`<name>.json.enc`, passphrase from the LKGB_TASKDATA_KEY environment
variable). Without the key the loader degrades to the plaintext fixture
(`<name>.json`) next to it and emits a warning.
"""

from __future__ import annotations

import json
import os
import warnings
from pathlib import Path

from ..crypto import TASKDATA_KEY_ENV, decrypt_task_data


class TaskDataError(RuntimeError):
    """Task data missing, undecryptable, or structurally invalid."""


def files_dir() -> Path:
    return Path(__file__).parent / "files"


_cache: dict[tuple[str, str], dict] = {}


def reset_cache() -> None:
    _cache.clear()


def load_container(name: str, data_dir: Path | None = None) -> dict:
    """Load a task-data container by name ("rdf_syntax_fix", ...)."""
    directory = Path(data_dir) if data_dir is not None else files_dir()
    passphrase = os.environ.get(TASKDATA_KEY_ENV, "")
    cache_key = (str(directory / name), passphrase)
    if cache_key in _cache:
        return _cache[cache_key]

    encrypted = directory / f"{name}.json.enc"
    plain = directory / f"{name}.json"
    if passphrase and encrypted.exists():
        payload = decrypt_task_data(encrypted.read_bytes(), passphrase)
        doc = json.loads(payload.decode("utf-8"))
    elif plain.exists():
        if not passphrase:
            warnings.warn(
                f"{TASKDATA_KEY_ENV} is not set; loading plaintext task-data "
                f"fixture {plain.name}",
                stacklevel=2,
            )
        else:
            warnings.warn(
                f"no encrypted container {encrypted.name}; falling back to "
                f"plaintext fixture {plain.name}",
                stacklevel=2,
            )
        doc = json.loads(plain.read_text(encoding="utf-8"))
    elif encrypted.exists():
        raise TaskDataError(
            f"task data {name!r} is encrypted and {TASKDATA_KEY_ENV} is not set "
            "(no plaintext fixture available)"
        )
    else:
        raise TaskDataError(f"no task-data container named {name!r} in {directory}")

    if doc.get("schema") != "kgbench-taskdata-v1":
        raise TaskDataError(f"container {name!r} has unknown schema {doc.get('schema')!r}")
    _cache[cache_key] = doc
    return doc
