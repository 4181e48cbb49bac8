"""Manifest and CSV writers shared by every experiment."""
from __future__ import annotations

import csv
import datetime as _dt
import json
from pathlib import Path
from typing import Iterable, Sequence


def _plain(x):
    if hasattr(x, "item"):
        return x.item()
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    return x


def write_csv(path: Path, header: Sequence[str], rows: Iterable[Sequence]) -> int:
    count = 0
    with open(path, "w", newline="") as fh:
        wr = csv.writer(fh, lineterminator="\n")
        wr.writerow(header)
        for row in rows:
            wr.writerow([_plain(v) for v in row])
            count += 1
    return count


def write_artifacts(
    out_dir,
    name: str,
    seed: int,
    params: dict,
    verdicts: dict,
    tables: dict[str, tuple[Sequence[str], Iterable[Sequence]]] | None = None,
    extra: dict | None = None,
) -> Path:
    """Write ``<name>_<seed>_<table>.csv`` files and a ``<name>_<seed>_manifest.json`` that lists them.

    Only the manifest carries a timestamp, so CSV bodies are reproducible.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for table, (header, rows) in (tables or {}).items():
        path = out / f"{name}_{seed}_{table}.csv"
        n = write_csv(path, header, rows)
        files.append({"file": path.name, "rows": n})
    manifest = {
        "experiment": name,
        "seed": seed,
        "params": _plain(params),
        "verdicts": _plain(verdicts),
        "csv": files,
        "created": _dt.datetime.now(_dt.timezone.utc).isoformat(),
    }
    if extra:
        manifest.update(_plain(extra))
    path = out / f"{name}_{seed}_manifest.json"
    path.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return path
