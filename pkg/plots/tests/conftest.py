"""Generate preset data through the primary CLI (the external interface)."""

import subprocess
import sys
from pathlib import Path

import pytest

from udwplots.recipes import RECIPES


@pytest.fixture(scope="session")
def data_dir(tmp_path_factory) -> Path:
    out = tmp_path_factory.mktemp("preset-data")
    for preset in RECIPES:
        proc = subprocess.run(
            [sys.executable, "-m", "udwkit.cli", "figure",
             "--preset", preset, "--out-dir", str(out)],
            capture_output=True, text=True, timeout=300)
        assert proc.returncode == 0, f"{preset}: {proc.stderr}"
    return out
