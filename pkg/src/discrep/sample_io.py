"""CSV sample files: header x_1..x_N followed by optional y and w columns.

A missing w column means uniform weights. Files are UTF-8 with '.' as the
decimal separator. All format errors carry the 1-based line number.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import LabeledSample, WeightedEmpirical, merge_duplicates


class SampleFormatError(ValueError):
    """Malformed sample CSV; the message names the offending line."""


@dataclass(frozen=True)
class SampleFile:
    """Raw file contents: points plus optional label and weight columns."""

    points: np.ndarray
    labels: Optional[np.ndarray]
    weights: Optional[np.ndarray]

    @property
    def size(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def _parse_header(row: list) -> tuple:
    """Return (dim, has_labels, has_weights) or raise with line 1 context."""
    cols = [c.strip() for c in row]
    dim = 0
    while dim < len(cols) and cols[dim] == f"x_{dim + 1}":
        dim += 1
    if dim == 0:
        raise SampleFormatError(
            f"line 1: header must start with x_1, got {cols[0] if cols else 'an empty row'!r}"
        )
    rest = cols[dim:]
    has_labels = bool(rest) and rest[0] == "y"
    if has_labels:
        rest = rest[1:]
    has_weights = bool(rest) and rest[0] == "w"
    if has_weights:
        rest = rest[1:]
    if rest:
        raise SampleFormatError(
            f"line 1: unexpected column {rest[0]!r}; header layout is x_1..x_N[,y][,w]"
        )
    return dim, has_labels, has_weights


def _parse_float(token: str, line: int, column: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise SampleFormatError(
            f"line {line}: could not parse {token!r} in column {column}"
        ) from None
    if not np.isfinite(value):
        raise SampleFormatError(f"line {line}: column {column} must be finite, got {token!r}")
    return value


def read_sample_csv(path) -> SampleFile:
    """Parse a sample CSV; raises SampleFormatError naming the bad line."""
    with open(path, encoding="utf-8", newline="") as handle:
        reader = csv.reader(handle)
        try:
            header = next(reader)
        except StopIteration:
            raise SampleFormatError("line 1: file is empty; expected a header row") from None
        dim, has_labels, has_weights = _parse_header(header)
        width = dim + int(has_labels) + int(has_weights)
        names = [f"x_{i + 1}" for i in range(dim)]
        if has_labels:
            names.append("y")
        if has_weights:
            names.append("w")
        rows, labels, weights = [], [], []
        for line, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != width:
                raise SampleFormatError(
                    f"line {line}: expected {width} fields, got {len(row)}"
                )
            values = [_parse_float(tok, line, names[j]) for j, tok in enumerate(row)]
            rows.append(values[:dim])
            if has_labels:
                labels.append(values[dim])
            if has_weights:
                w = values[-1]
                if w < 0:
                    raise SampleFormatError(f"line {line}: weight must be nonnegative, got {w}")
                weights.append(w)
    if not rows:
        raise SampleFormatError("line 2: no data rows")
    return SampleFile(
        points=np.asarray(rows, dtype=float),
        labels=np.asarray(labels, dtype=float) if has_labels else None,
        weights=np.asarray(weights, dtype=float) if has_weights else None,
    )


def to_weighted(sample: SampleFile) -> WeightedEmpirical:
    """Merge duplicate rows and normalize the (possibly uniform) weights."""
    if sample.weights is None:
        return WeightedEmpirical.from_points(sample.points)
    return merge_duplicates(sample.points, sample.weights)


def to_labeled(sample: SampleFile) -> LabeledSample:
    if sample.labels is None:
        raise SampleFormatError("sample has no y column but labels are required")
    return LabeledSample(sample.points, sample.labels)


def write_sample_csv(path, points, labels=None, weights=None) -> None:
    """Inverse of read_sample_csv for round-trips and test fixtures."""
    pts = np.asarray(points, dtype=float)
    if pts.ndim == 1:
        pts = pts[:, None]
    header = [f"x_{i + 1}" for i in range(pts.shape[1])]
    columns = [pts[:, i] for i in range(pts.shape[1])]
    if labels is not None:
        header.append("y")
        columns.append(np.asarray(labels, dtype=float))
    if weights is not None:
        header.append("w")
        columns.append(np.asarray(weights, dtype=float))
    with open(path, "w", encoding="utf-8", newline="") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in zip(*columns):
            writer.writerow([repr(float(v)) for v in row])
