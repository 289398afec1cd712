"""Nearest-neighbour reference classifiers on raw dissimilarities."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InputError


@dataclass(frozen=True)
class TrainingSet:
    """Labelled exemplars: player indices and their classes (0-based)."""

    members: np.ndarray
    classes: np.ndarray
    n_classes: int | None = None

    def __post_init__(self):
        members = np.asarray(self.members, dtype=np.int64).ravel()
        classes = np.asarray(self.classes, dtype=np.int64).ravel()
        if members.size != classes.size:
            raise InputError("members and classes must have the same length")
        if np.unique(members).size != members.size:
            raise InputError("duplicate training members")
        if classes.size and classes.min() < 0:
            raise InputError("class indices must be >= 0")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "classes", classes)
        m = self.n_classes
        if m is None:
            m = int(classes.max()) + 1 if classes.size else 0
        object.__setattr__(self, "n_classes", int(m))

    def __len__(self):
        return self.members.size

    def by_class(self):
        return {c: self.members[self.classes == c] for c in range(self.n_classes)}


def _checked(query_dissims, train):
    d = np.asarray(query_dissims, dtype=float).ravel()
    if len(train) == 0:
        raise InputError("empty training set")
    if d.size != len(train):
        raise InputError(f"expected {len(train)} dissimilarities, got {d.size}")
    return d


def nn_classify(query_dissims, train):
    """Class of the single most similar training member.

    ``query_dissims[k]`` is the dissimilarity to ``train.members[k]``.
    Ties go to the member with the lowest player index.
    """
    d = _checked(query_dissims, train)
    best = np.lexsort((train.members, d))[0]
    return int(train.classes[best])


def accumulated_nn_classify(query_dissims, train):
    """Class with the smallest summed dissimilarity over its members.

    Ties go to the lowest class index.
    """
    d = _checked(query_dissims, train)
    # sum in member-index order so the result ignores presentation order
    order = np.argsort(train.members, kind="stable")
    scores = np.full(train.n_classes, np.inf)
    present = np.bincount(train.classes, minlength=train.n_classes) > 0
    sums = np.bincount(train.classes[order], weights=d[order],
                       minlength=train.n_classes)
    scores[present] = sums[present]
    return int(np.argmin(scores))
