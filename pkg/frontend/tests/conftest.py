"""Golden CSV fixtures, produced through the primary package's CLI.

The renderer's only contract with the producer is the CSV format, so the
fixtures invoke the actual command-line entry point rather than any Python
API.
"""

from __future__ import annotations

import subprocess
import sys
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parents[2]
CONFIGS = REPO_ROOT / "configs"


def _run_cli(config: Path, outdir: Path, *overrides: str) -> Path:
    cmd = [sys.executable, "-m", "flowlimits.cli", "run", "--config", str(config), "--out", str(outdir)]
    for item in overrides:
        cmd += ["--override", item]
    proc = subprocess.run(cmd, capture_output=True, text=True, cwd=REPO_ROOT)
    assert proc.returncode == 0, f"{cmd} failed:\n{proc.stdout}\n{proc.stderr}"
    csvs = sorted(outdir.glob("*.csv"))
    assert csvs, f"no CSV produced in {outdir}"
    return csvs[0]


@pytest.fixture(scope="session")
def golden_csvs(tmp_path_factory) -> dict:
    base = tmp_path_factory.mktemp("golden")
    return {
        "qubit": _run_cli(CONFIGS / "qubit_autocorr.ini", base / "qubit"),
        "goe": _run_cli(
            CONFIGS / "goe_autocorr.ini", base / "goe", "time.n_points=500"
        ),
        "fidelity": _run_cli(CONFIGS / "goe_fidelity.ini", base / "fidelity"),
    }
