"""CSV ingestion for curve data.

Two layouts are understood.  Wide: first column holds the observation id,
the header row holds the argument values, empty cells are missing points.
Long: columns ``id, variable, t, value``, one observed point per record;
different ids may be observed at different arguments.
"""

import csv

import numpy as np

from .basis import SampledCurve
from .errors import DataError

LONG = "long"
WIDE = "wide"


def ingest(path, format=WIDE, variable=None):
    """Read curves from a CSV file, grouped by variable.

    Returns a dict mapping variable name to a list of
    :class:`SampledCurve`, ids ordered by first appearance.  For wide
    files the single variable is named after ``variable`` (default: the
    file stem).
    """
    if format == WIDE:
        return _ingest_wide(path, variable)
    if format == LONG:
        return _ingest_long(path)
    raise DataError(f"unknown format {format!r}; expected 'wide' or 'long'")


def _read_rows(path):
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            return list(csv.reader(fh))
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc


def _ingest_wide(path, variable):
    rows = _read_rows(path)
    if len(rows) < 2:
        raise DataError(f"{path}: need a header row and at least one data row")
    header = rows[0]
    if len(header) < 2:
        raise DataError(f"{path}: wide header needs an id column plus argument columns")
    problems = []
    try:
        args = np.array([float(x) for x in header[1:]])
    except ValueError:
        raise DataError(f"{path}: line 1: header cells after the id column must be numbers")
    if np.any(np.diff(args) <= 0):
        raise DataError(f"{path}: argument columns must be strictly increasing")
    if variable is None:
        variable = _stem(path)
    curves = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(cell.strip() == "" for cell in row):
            continue
        cid = row[0]
        ts, vals = [], []
        for j, cell in enumerate(row[1:]):
            if cell.strip() == "":
                continue
            try:
                vals.append(float(cell))
                ts.append(args[j])
            except ValueError:
                problems.append(f"line {lineno}: bad value {cell!r}")
        if problems:
            continue
        if not ts:
            raise DataError(f"{path}: curve {cid!r} has no observed points")
        curves.append(SampledCurve(np.array(ts), np.array(vals), id=cid))
    if problems:
        raise DataError(f"{path}: unparsable rows: " + "; ".join(problems[:10]))
    return {variable: curves}


def _ingest_long(path):
    rows = _read_rows(path)
    if len(rows) < 2:
        raise DataError(f"{path}: need a header row and at least one data row")
    header = [h.strip().lower() for h in rows[0]]
    required = ["id", "variable", "t", "value"]
    try:
        pos = {name: header.index(name) for name in required}
    except ValueError:
        raise DataError(
            f"{path}: long format needs columns {required}, got {rows[0]}"
        )
    points = {}  # (variable, id) -> list of (t, value)
    id_order = {}  # variable -> ids in first-appearance order
    problems = []
    for lineno, row in enumerate(rows[1:], start=2):
        if not row or all(cell.strip() == "" for cell in row):
            continue
        if len(row) < len(header):
            problems.append(f"line {lineno}: expected {len(header)} cells, got {len(row)}")
            continue
        cid = row[pos["id"]]
        var = row[pos["variable"]]
        try:
            t = float(row[pos["t"]])
            v = float(row[pos["value"]])
        except ValueError:
            problems.append(f"line {lineno}: bad t/value pair")
            continue
        id_order.setdefault(var, [])
        if cid not in id_order[var]:
            id_order[var].append(cid)
        points.setdefault((var, cid), []).append((t, v))
    if problems:
        raise DataError(f"{path}: unparsable rows: " + "; ".join(problems[:10]))
    out = {}
    for var, ids in id_order.items():
        curves = []
        for cid in ids:
            pts = sorted(points[(var, cid)])
            ts = np.array([p[0] for p in pts])
            vals = np.array([p[1] for p in pts])
            curves.append(SampledCurve(ts, vals, id=cid))
        out[var] = curves
    return out


def _stem(path):
    name = str(path).replace("\\", "/").rsplit("/", 1)[-1]
    return name.rsplit(".", 1)[0] if "." in name else name
