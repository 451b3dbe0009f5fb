"""Dataset files, JSON reports, and the flat history CSV."""

import csv
import json

import numpy as np

from .errors import FormatError


def _is_float_row(cells):
    try:
        [float(c) for c in cells]
        return True
    except ValueError:
        return False


def _map_labels(raw):
    """Map arbitrary label values to 1..c by order of first appearance."""
    seen = {}
    out = np.empty(len(raw), dtype=int)
    for i, v in enumerate(raw):
        if v not in seen:
            seen[v] = len(seen) + 1
        out[i] = seen[v]
    return out


def load_csv(path):
    """One sample per row; a header whose last column is 'label' splits off truth."""
    with open(path, newline="") as fh:
        rows = [(lineno, row) for lineno, row in enumerate(csv.reader(fh), start=1)
                if any(cell.strip() for cell in row)]
    if not rows:
        raise FormatError(f"{path}: empty file")

    first_line, first = rows[0]
    has_header = not _is_float_row(first)
    has_label = has_header and first[-1].strip().lower() == "label"
    width = len(first)
    data_rows = rows[1:] if has_header else rows

    feats, raw_labels = [], []
    for lineno, row in data_rows:
        if len(row) != width:
            raise FormatError(f"{path}, line {lineno}: expected {width} columns, got {len(row)}")
        cells = row[:-1] if has_label else row
        try:
            feats.append([float(c) for c in cells])
        except ValueError as exc:
            raise FormatError(f"{path}, line {lineno}: {exc}") from None
        if has_label:
            raw_labels.append(row[-1].strip())
    if not feats:
        raise FormatError(f"{path}: no data rows")
    X = np.asarray(feats, dtype=float)
    truth = _map_labels(raw_labels) if has_label else None
    return X, truth


def load_matrix(path):
    """Whitespace-delimited numeric matrix; labels from '<path>.labels' if present."""
    try:
        X = np.loadtxt(path, ndmin=2)
    except ValueError as exc:
        raise FormatError(f"{path}: {exc}") from None
    sidecar = f"{path}.labels"
    truth = None
    try:
        with open(sidecar) as fh:
            truth = _map_labels([line.strip() for line in fh if line.strip()])
    except FileNotFoundError:
        pass
    if truth is not None and truth.size != X.shape[0]:
        raise FormatError(f"{sidecar}: {truth.size} labels for {X.shape[0]} samples")
    return X, truth


def load_dataset(path, fmt=None):
    """Load (X, truth-or-None).  fmt: 'csv' | 'matrix', default by extension."""
    if fmt is None:
        fmt = "csv" if str(path).lower().endswith(".csv") else "matrix"
    if fmt == "csv":
        return load_csv(path)
    if fmt == "matrix":
        return load_matrix(path)
    raise FormatError(f"unknown input format {fmt!r}")


def save_csv(path, X, labels=None):
    """Write samples with an f1..fm header, plus a label column when given."""
    X = np.asarray(X, dtype=float)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        header = [f"f{j + 1}" for j in range(X.shape[1])]
        if labels is not None:
            header.append("label")
        writer.writerow(header)
        for i in range(X.shape[0]):
            row = [repr(float(v)) for v in X[i]]
            if labels is not None:
                row.append(int(labels[i]))
            writer.writerow(row)


HISTORY_FIELDS = ["iteration", "objective", "eig_sum", "gamma", "components"]


def emit_history(report, path):
    """Flat per-iteration CSV: iteration, objective, eig_sum, gamma, components.

    Fields a mode does not track stay empty.  Values are written with repr
    so that a round-trip parse reproduces them exactly.
    """
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(HISTORY_FIELDS)
        for rec in report.history:
            row = [rec["iteration"]]
            for k in HISTORY_FIELDS[1:]:
                v = rec.get(k)
                row.append("" if v is None else (int(v) if k == "components" else repr(float(v))))
            writer.writerow(row)


def read_history(path):
    """Parse a history CSV back into a list of dicts."""
    out = []
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out.append({
                "iteration": int(row["iteration"]),
                **{k: (float(row[k]) if row[k] else None) for k in HISTORY_FIELDS[1:]},
            })
            if out[-1]["components"] is not None:
                out[-1]["components"] = int(out[-1]["components"])
    return out


def write_report(report, path):
    with open(path, "w") as fh:
        json.dump(report.to_dict(), fh, indent=2)
        fh.write("\n")


def read_report(path):
    with open(path) as fh:
        return json.load(fh)
