"""Feature ingestion: CSV parsing with per-line diagnostics and the shared
normalization (center per coordinate, scale each vector to unit norm)."""

from __future__ import annotations

import numpy as np


def center_unit_norm(features: np.ndarray) -> np.ndarray:
    """Subtract the per-coordinate mean and scale each row to unit norm;
    rows that center to zero stay zero."""
    features = np.asarray(features, dtype=float)
    centered = features - features.mean(axis=0)
    norms = np.linalg.norm(centered, axis=1)
    safe = np.where(norms == 0.0, 1.0, norms)
    return centered / safe[:, None]


def load_features(path) -> np.ndarray:
    """Read an element-feature CSV: header row, first column an element id,
    remaining columns numeric.  Returns the normalized feature matrix in file
    order."""
    rows: list[list[float]] = []
    width: int | None = None
    with open(path, encoding="utf-8") as fh:
        header = fh.readline()
        if not header.strip():
            raise ValueError("line 1: missing header row")
        for lineno, line in enumerate(fh, start=2):
            stripped = line.strip()
            if not stripped:
                continue
            cells = stripped.split(",")
            if len(cells) < 2:
                raise ValueError(f"line {lineno}: expected an id and at least one feature")
            if width is None:
                width = len(cells)
            elif len(cells) != width:
                raise ValueError(
                    f"line {lineno}: expected {width} columns, found {len(cells)}"
                )
            try:
                rows.append([float(c) for c in cells[1:]])
            except ValueError as exc:
                raise ValueError(f"line {lineno}: non-numeric cell ({exc})") from None
    if not rows:
        raise ValueError("no data rows found")
    return center_unit_norm(np.array(rows))
