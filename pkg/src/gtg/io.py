"""CSV readers and writers for matrices, labels, predictions and reports."""
from __future__ import annotations

import csv
import json
import logging
import math

import numpy as np

from .errors import ConfigError, FormatError, InputError
from .game import LabelAssignment, UNLABELED
from .similarity import symmetrize_max

log = logging.getLogger(__name__)

_LABEL_HEADERS = {("player_id", "class_name"), ("id", "label"), ("id", "class")}


def _float(cell):
    return float(cell.strip())


def load_matrix(path, delimiter=","):
    """Read a rectangular numeric CSV; a non-numeric first row is a header."""
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh, delimiter=delimiter) if r and any(c.strip() for c in r)]
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror or exc}") from exc
    if rows:
        try:
            [_float(c) for c in rows[0]]
        except ValueError:
            rows = rows[1:]
    if not rows:
        raise FormatError(f"{path}: no numeric rows")
    width = len(rows[0])
    values = np.empty((len(rows), width))
    for r, row in enumerate(rows):
        if len(row) != width:
            raise FormatError(f"{path}: row {r + 1} has {len(row)} cells, expected {width}")
        for c, cell in enumerate(row):
            try:
                v = _float(cell)
            except ValueError:
                raise FormatError(f"{path}: cell ({r + 1}, {c + 1}) is not a number: {cell!r}") from None
            if not math.isfinite(v):
                raise FormatError(f"{path}: cell ({r + 1}, {c + 1}) is not finite")
            values[r, c] = v
    return values


def load_distance_matrix(path, delimiter=",", symmetrize=True):
    """Read an (n, n) dissimilarity matrix.

    Negative entries are rejected, a nonzero diagonal is zeroed with a
    warning and the result is symmetrized with the elementwise max unless
    ``symmetrize`` is False.
    """
    D = load_matrix(path, delimiter)
    if D.shape[0] != D.shape[1]:
        raise FormatError(f"{path}: distance matrix must be square, got {D.shape}")
    if np.any(D < 0):
        raise FormatError(f"{path}: negative dissimilarities are not allowed")
    if np.any(np.diag(D) != 0):
        log.warning("%s: nonzero diagonal entries set to 0", path)
        np.fill_diagonal(D, 0.0)
    return symmetrize_max(D) if symmetrize else D


def load_features(path, delimiter=","):
    """Read an (n, d) feature matrix; at least two rows are required."""
    F = load_matrix(path, delimiter)
    if F.shape[0] < 2:
        raise InputError(f"{path}: need at least 2 feature rows, got {F.shape[0]}")
    return F


def load_labels(path, delimiter=","):
    """Read ``player_id,class_name`` rows.

    Class names are numbered in order of first appearance; an empty class
    field marks an unlabelled player.

    Returns
    -------
    ids : list of str
    assignment : LabelAssignment
    """
    try:
        with open(path, newline="") as fh:
            rows = [r for r in csv.reader(fh, delimiter=delimiter) if r and any(c.strip() for c in r)]
    except OSError as exc:
        raise FormatError(f"{path}: {exc.strerror or exc}") from exc
    if rows and tuple(c.strip().lower() for c in rows[0][:2]) in _LABEL_HEADERS:
        rows = rows[1:]
    ids, labels, names = [], [], {}
    seen = set()
    for r, row in enumerate(rows):
        if len(row) > 2 or not row[0].strip():
            raise FormatError(f"{path}: row {r + 1} must be 'player_id,class_name'")
        pid = row[0].strip()
        cname = row[1].strip() if len(row) == 2 else ""
        if pid in seen:
            raise FormatError(f"{path}: duplicate player id {pid!r}")
        seen.add(pid)
        ids.append(pid)
        if cname:
            labels.append(names.setdefault(cname, len(names)))
        else:
            labels.append(UNLABELED)
    if not names:
        raise ConfigError(f"{path}: no labelled players")
    return ids, LabelAssignment(labels, len(names), tuple(names))


def write_matrix(path, M, delimiter=","):
    """Write a numeric matrix with 17 significant digits (exact round trip)."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
            for row in M:
                w.writerow([f"{v:.17g}" for v in row])
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def write_labels(path, ids, labels, class_names=None, delimiter=","):
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
            w.writerow(["player_id", "class_name"])
            for pid, c in zip(ids, labels):
                name = "" if c == UNLABELED else (class_names[c] if class_names else str(c))
                w.writerow([pid, name])
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def prediction_rows(result, ids, class_names=None):
    """``(player_id, class_name, probability)`` for every unlabelled player."""
    rows = []
    for i, c in zip(result.unlabeled, result.predictions):
        name = class_names[c] if class_names else str(int(c))
        rows.append((ids[i], name, float(result.final_space[i, c])))
    return rows


def write_predictions(path, result, ids, class_names=None, delimiter=","):
    try:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, delimiter=delimiter, lineterminator="\n")
            w.writerow(["player_id", "class_name", "probability"])
            for pid, name, p in prediction_rows(result, ids, class_names):
                w.writerow([pid, name, f"{p:.17g}"])
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def write_report(path, reports, config=None, class_names=None):
    doc = {
        "reports": [r.to_dict() for r in reports],
        "class_names": list(class_names) if class_names else None,
        "config": None if config is None else {
            "k": config.k, "epsilon": config.epsilon, "max_iters": config.max_iters,
            "symmetric_knn": config.symmetric_knn, "k_sigma": config.k_sigma,
        },
    }
    try:
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc
