"""Reading the primary CLI's CSV data files and JSON manifests.

The data contract: '#'-prefixed comment lines, one header row, float rows,
and a sidecar ``<name>.manifest.json`` that must be present.  No physics is
recomputed here; these files are the single source of numerical truth.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np


class MissingColumnsError(ValueError):
    def __init__(self, path: Path, missing: list[str]):
        super().__init__(
            f"{path}: missing required columns: {', '.join(missing)}")
        self.missing = missing


@dataclass(frozen=True)
class SweepData:
    path: Path
    comments: dict[str, str]
    columns: list[str]
    values: np.ndarray  # shape (n_rows, n_columns)
    manifest: dict
    manifest_sha256: str

    def column(self, name: str) -> np.ndarray:
        return self.values[:, self.columns.index(name)]


def load_sweep(csv_path: str | Path) -> SweepData:
    path = Path(csv_path)
    if not path.exists():
        raise FileNotFoundError(f"data file not found: {path}")
    manifest_path = path.with_suffix(".manifest.json")
    if not manifest_path.exists():
        raise FileNotFoundError(f"manifest not found beside data file: {manifest_path}")
    manifest_bytes = manifest_path.read_bytes()
    manifest = json.loads(manifest_bytes)

    comments: dict[str, str] = {}
    columns: list[str] | None = None
    rows: list[list[float]] = []
    for line in path.read_text().splitlines():
        if not line.strip():
            continue
        if line.startswith("#"):
            body = line.lstrip("#").strip()
            if "=" in body:
                key, _, value = body.partition("=")
                comments[key.strip()] = value.strip()
            continue
        if columns is None:
            columns = [c.strip() for c in line.split(",")]
            continue
        rows.append([float(x) for x in line.split(",")])
    if columns is None or not rows:
        raise ValueError(f"empty data file: {path}")
    return SweepData(
        path=path,
        comments=comments,
        columns=columns,
        values=np.asarray(rows, dtype=float),
        manifest=manifest,
        manifest_sha256=hashlib.sha256(manifest_bytes).hexdigest(),
    )
