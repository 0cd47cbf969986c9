"""Trajectory ingestion and result files."""

import csv
import json
import math
import warnings
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import InputError

DEFAULT_ID = "0"
CURVE_HEADER = ["id", "point_index", "x", "y"]
VELOCITY_HEADER = ["id", "point_index", "x", "y", "vx", "vy", "speed"]
LOG_HEADER = ["id", "step", "total_length", "mean_hausdorff", "stop_reason"]


@dataclass(frozen=True)
class TrajectoryRecord:
    frame: int
    x: float
    y: float
    id: str = DEFAULT_ID


def fmt(value):
    """Decimal text that parses back to the identical float."""
    return format(float(value), ".17g")


def _number(text, kind, column, where):
    try:
        value = kind(text)
    except (TypeError, ValueError):
        raise InputError(f"{where}: bad {column} value {text!r}") from None
    if kind is float and not math.isfinite(value):
        raise InputError(f"{where}: {column} must be finite")
    return value


def _rows_from_csv(path):
    with open(path, newline="", encoding="utf-8") as f:
        reader = csv.DictReader(f)
        header = [c.strip() for c in (reader.fieldnames or [])]
        for column in ("frame", "x", "y"):
            if column not in header:
                raise InputError(f"{path}: missing column {column!r}")
        reader.fieldnames = header
        for row in reader:
            yield reader.line_num, row


def _rows_from_json(path):
    with open(path, encoding="utf-8") as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: invalid JSON ({exc})") from None
    if not isinstance(data, list):
        raise InputError(f"{path}: expected a JSON array of records")
    for n, item in enumerate(data):
        if not isinstance(item, dict):
            raise InputError(f"{path}: record {n} is not an object")
        for column in ("frame", "x", "y"):
            if column not in item:
                raise InputError(f"{path}: record {n} is missing {column!r}")
        yield n, item


def parse_trajectory(path):
    """Read trajectory records from CSV (``id,frame,x,y``; ``id`` optional) or JSON.

    Records come back grouped by id in order of first appearance and sorted
    by frame.  A point repeating its predecessor is dropped with a warning.

    Raises
    ------
    InputError
        On malformed rows, repeated frames, or an id with fewer than two
        distinct points.
    """
    path = Path(path)
    is_json = path.suffix.lower() == ".json"
    rows = _rows_from_json(path) if is_json else _rows_from_csv(path)
    label = "record" if is_json else "line"

    groups = {}
    for n, row in rows:
        where = f"{path}: {label} {n}"
        tid = row.get("id")
        tid = DEFAULT_ID if tid is None or str(tid).strip() == "" else str(tid).strip()
        rec = TrajectoryRecord(
            frame=_number(row["frame"], int, "frame", where),
            x=_number(row["x"], float, "x", where),
            y=_number(row["y"], float, "y", where),
            id=tid,
        )
        groups.setdefault(tid, []).append(rec)

    out = []
    for tid, recs in groups.items():
        recs.sort(key=lambda r: r.frame)
        kept = [recs[0]]
        for rec in recs[1:]:
            if rec.frame == kept[-1].frame:
                raise InputError(f"{path}: trajectory {tid!r} repeats frame {rec.frame}")
            if (rec.x, rec.y) == (kept[-1].x, kept[-1].y):
                warnings.warn(f"trajectory {tid!r}: frame {rec.frame} repeats the previous point; dropped")
                continue
            kept.append(rec)
        if len(kept) < 2:
            raise InputError(f"{path}: trajectory {tid!r} has fewer than two distinct points")
        out.extend(kept)
    return out


def group_trajectories(records):
    """Map id to ``(frames, points)`` arrays, preserving record order."""
    groups = {}
    for rec in records:
        groups.setdefault(rec.id, []).append(rec)
    return {
        tid: (np.array([r.frame for r in recs]), np.array([[r.x, r.y] for r in recs], dtype=float))
        for tid, recs in groups.items()
    }


def _write(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)


def write_curve_csv(path, tid, points):
    _write(path, CURVE_HEADER, ([tid, i, fmt(x), fmt(y)] for i, (x, y) in enumerate(points)))


def read_curve_csv(path):
    """Return ``{id: points}`` from a curve file."""
    curves = {}
    with open(path, newline="", encoding="utf-8") as f:
        for row in csv.DictReader(f):
            curves.setdefault(row["id"], []).append((float(row["x"]), float(row["y"])))
    return {tid: np.array(pts) for tid, pts in curves.items()}


def write_velocity_csv(path, tid, points, field):
    """One row per element, located at its end grid point ``x_i``."""
    rows = (
        [tid, i + 1, fmt(points[i + 1, 0]), fmt(points[i + 1, 1]), fmt(vx), fmt(vy), fmt(s)]
        for i, ((vx, vy), s) in enumerate(zip(field.vectors, field.speed))
    )
    _write(path, VELOCITY_HEADER, rows)


def write_log_csv(path, tid, result):
    rows = [[tid, step, fmt(length), fmt(dh) if dh is not None else "", ""] for step, length, dh in _log_rows(result)]
    if rows:
        rows[-1][-1] = result.stop_reason.value
    _write(path, LOG_HEADER, rows)


def _log_rows(result):
    history = result.history
    for d in history:
        if d.mean_hausdorff is not None:
            yield d.step, d.length_after, d.mean_hausdorff
    if history and history[-1].mean_hausdorff is None:
        yield history[-1].step, history[-1].length_after, None
