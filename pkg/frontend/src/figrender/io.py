"""Reading the curve files emitted by the flowlimits runner.

The format is fixed by the producer: ``#``-prefixed ``key = value`` metadata
lines, one comma-separated header row, then float rows. This module never
computes physics; it only hands columns and metadata to the figure layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

__all__ = ["CurveFile", "CurveFileError", "read_curve_file"]


class CurveFileError(ValueError):
    """Malformed or incomplete curve file; the message names what is missing."""


@dataclass(frozen=True)
class CurveFile:
    """Parsed curve file: metadata strings plus named float columns."""

    path: str
    metadata: dict
    columns: dict

    def column(self, name: str) -> np.ndarray:
        try:
            return self.columns[name]
        except KeyError:
            raise CurveFileError(
                f"{self.path}: required column {name!r} not found; "
                f"file has {sorted(self.columns)}"
            ) from None

    def require(self, names: list[str]) -> None:
        missing = [n for n in names if n not in self.columns]
        if missing:
            raise CurveFileError(
                f"{self.path}: missing column(s) {', '.join(missing)}; "
                f"file has {sorted(self.columns)}"
            )

    def metadata_float(self, key: str) -> float | None:
        raw = self.metadata.get(key)
        if raw is None:
            return None
        try:
            return float(raw)
        except ValueError:
            return None


def read_curve_file(path: str | Path) -> CurveFile:
    path = Path(path)
    metadata: dict = {}
    header: list[str] | None = None
    rows: list[list[float]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                key, sep, value = line[1:].partition("=")
                if sep:
                    metadata[key.strip()] = value.strip()
                continue
            if header is None:
                header = [name.strip() for name in line.split(",")]
                continue
            parts = line.split(",")
            if len(parts) != len(header):
                raise CurveFileError(
                    f"{path}:{lineno}: row has {len(parts)} fields, header has {len(header)}"
                )
            try:
                rows.append([float(x) for x in parts])
            except ValueError as exc:
                raise CurveFileError(f"{path}:{lineno}: {exc}") from None
    if header is None:
        raise CurveFileError(f"{path}: no header row; file is empty")
    if not rows:
        raise CurveFileError(f"{path}: no data rows under header {header}")
    data = np.asarray(rows)
    columns = {name: data[:, i] for i, name in enumerate(header)}
    return CurveFile(path=str(path), metadata=metadata, columns=columns)
