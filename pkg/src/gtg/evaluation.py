"""
Leave-one-out evaluation protocol and synthetic data.

The reference protocol works on datasets with exactly three images per
class. Each image in turn is the query; the training set holds
``train_per_class`` images of every class. With two per class the query's
class contributes its two other images (n runs). With one per class each
of the query's two classmates is used in turn (2n runs). Other classes are
represented by their lowest-index members, or by a seeded random draw.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .baselines import TrainingSet, accumulated_nn_classify, nn_classify
from .errors import GTGError, InputError, ProtocolError
from .game import GameConfig, LabelAssignment, UNLABELED, run_game
from .similarity import knn_neighborhoods, local_scales

CLASSIFIERS = ("gtg", "nn", "acc-nn")


@dataclass(frozen=True)
class ProtocolSplit:
    query: int
    training: TrainingSet


@dataclass
class AccuracyReport:
    classifier: str
    train_per_class: int
    runs: int
    correct: int
    failed: int
    confusion: np.ndarray = field(repr=False)
    errors: list = field(default_factory=list, repr=False)

    @property
    def accuracy(self):
        return self.correct / self.runs if self.runs else 0.0

    def to_dict(self):
        return {
            "classifier": self.classifier,
            "train_per_class": self.train_per_class,
            "runs": self.runs,
            "correct": self.correct,
            "failed": self.failed,
            "accuracy": self.accuracy,
            "confusion": self.confusion.tolist(),
            "errors": list(self.errors),
        }


def _class_members(labels):
    labels = np.asarray(labels, dtype=np.int64).ravel()
    if labels.size == 0 or labels.min() < 0:
        raise InputError("every player needs a class label for evaluation")
    m = int(labels.max()) + 1
    members = [np.flatnonzero(labels == c) for c in range(m)]
    if any(g.size == 0 for g in members):
        raise InputError("class indices must be contiguous")
    return labels, members


def build_splits(labels, train_per_class, protocol="paper", rep_seed=None):
    """Enumerate the query/training splits of the evaluation protocol.

    Parameters
    ----------
    labels : array_like of int
        Class of every player (0-based, contiguous).
    train_per_class : int
        Training images per class; 1 or 2 for the paper protocol.
    protocol : {"paper", "loo"}
        ``"paper"`` requires three images per class. ``"loo"`` is a
        generalised leave-one-out for other class sizes: one split per
        query, the query's classmates and every other class contributing
        their first ``train_per_class`` members.
    rep_seed : int, optional
        Draw the other classes' representatives at random instead of
        taking the lowest-index members.

    Returns
    -------
    list of ProtocolSplit
    """
    labels, members = _class_members(labels)
    m = len(members)
    t = int(train_per_class)
    if protocol == "paper":
        if t not in (1, 2):
            raise ProtocolError("train_per_class must be 1 or 2")
        bad = [c for c, g in enumerate(members) if g.size != 3]
        if bad:
            raise ProtocolError(
                f"the paper protocol needs 3 images per class; classes {bad[:5]} differ")
    elif protocol == "loo":
        if t < 1:
            raise ProtocolError("train_per_class must be >= 1")
        for c, g in enumerate(members):
            if g.size < t + 1:
                raise ProtocolError(
                    f"class {c} has {g.size} members, needs {t + 1} for leave-one-out")
    else:
        raise ProtocolError(f"unknown protocol {protocol!r}")

    rng = np.random.default_rng(rep_seed) if rep_seed is not None else None

    def others(q_class):
        picks = []
        for c in range(m):
            if c == q_class:
                continue
            g = members[c]
            chosen = np.sort(rng.choice(g, t, replace=False)) if rng else g[:t]
            picks.append((chosen, c))
        return picks

    splits = []
    for q in range(labels.size):
        qc = labels[q]
        mates = members[qc][members[qc] != q]
        if protocol == "paper" and t == 1:
            own_choices = [mates[i:i + 1] for i in range(mates.size)]
        else:
            own_choices = [mates[:t]]
        for own in own_choices:
            groups = [(own, qc)] + others(qc)
            idx = np.concatenate([g for g, _ in groups])
            cls = np.concatenate([np.full(g.size, c) for g, c in groups])
            order = np.argsort(idx)
            splits.append(ProtocolSplit(int(q), TrainingSet(idx[order], cls[order], m)))
    return splits


def _classify_split(D, split, classifier, config):
    train = split.training
    if classifier == "nn":
        return nn_classify(D[split.query, train.members], train)
    if classifier == "acc-nn":
        return accumulated_nn_classify(D[split.query, train.members], train)
    # each run is its own game over the query and its training images
    players = np.sort(np.append(train.members, split.query))
    sub = D[np.ix_(players, players)]
    labels = np.full(players.size, UNLABELED)
    pos = np.searchsorted(players, train.members)
    labels[pos] = train.classes
    assignment = LabelAssignment(labels, train.n_classes)
    graph = knn_neighborhoods(sub, config.k, local_scales(sub, config.k_sigma),
                              symmetric=config.symmetric_knn)
    result = run_game(graph, assignment, config)
    return int(result.predictions[0])


def default_workers():
    try:
        return max(1, int(os.environ.get("GTG_THREADS", "1")))
    except ValueError:
        return 1


def run_protocol(D, labels, train_per_class, classifier="gtg", config=None,
                 protocol="paper", rep_seed=None, workers=None):
    """Run every split of the protocol with one classifier and tally it.

    A split whose classifier raises is counted as a failed run (and as not
    correct); its message is kept in ``report.errors``.
    """
    if classifier not in CLASSIFIERS:
        raise InputError(f"unknown classifier {classifier!r}; choose from {CLASSIFIERS}")
    config = config or GameConfig()
    D = np.asarray(D, dtype=float)
    labels, members = _class_members(labels)
    if D.shape != (labels.size, labels.size):
        raise InputError(f"matrix shape {D.shape} does not match {labels.size} labels")
    splits = build_splits(labels, train_per_class, protocol, rep_seed)
    m = len(members)

    def one(split):
        try:
            return _classify_split(D, split, classifier, config), None
        except GTGError as exc:
            return None, f"query {split.query}: {exc}"

    workers = workers or default_workers()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(one, splits))
    else:
        outcomes = [one(s) for s in splits]

    confusion = np.zeros((m, m), dtype=np.int64)
    errors = []
    for split, (pred, err) in zip(splits, outcomes):
        if err is not None:
            errors.append(err)
        else:
            confusion[labels[split.query], pred] += 1
    return AccuracyReport(
        classifier=classifier,
        train_per_class=int(train_per_class),
        runs=len(splits),
        correct=int(np.trace(confusion)),
        failed=len(errors),
        confusion=confusion,
        errors=errors,
    )


def format_table(reports):
    """Table with one row per classifier and one column pair per training size."""
    sizes = sorted({r.train_per_class for r in reports})
    names = list(dict.fromkeys(r.classifier for r in reports))
    cell = {(r.classifier, r.train_per_class): r for r in reports}
    head = f"{'classifier':<10}" + "".join(
        f" | {f'{t} per class: correct':>22} {'accuracy':>9}" for t in sizes)
    lines = [head, "-" * len(head)]
    for name in names:
        row = f"{name:<10}"
        for t in sizes:
            r = cell.get((name, t))
            if r is None:
                row += f" | {'-':>22} {'-':>9}"
            else:
                frac = f"{r.correct} / {r.runs}"
                row += f" | {frac:>22} {100 * r.accuracy:>8.1f}%"
        lines.append(row)
    failed = sum(r.failed for r in reports)
    if failed:
        lines.append(f"({failed} runs failed; see the structured report)")
    return "\n".join(lines)


def synthetic_blobs(seed, classes=3, per_class=3, dims=2, center_spread=10.0, noise=0.1):
    """Isotropic Gaussian point clouds, one per class.

    Class centres are drawn from ``N(0, center_spread^2 I)`` and members
    from ``N(centre, noise^2 I)``.

    Returns
    -------
    features : (classes * per_class, dims) ndarray
    labels : (classes * per_class,) ndarray of int
    """
    if min(classes, per_class, dims) < 1:
        raise InputError("classes, per_class and dims must be >= 1")
    if noise < 0 or center_spread < 0:
        raise InputError("noise and center_spread must be >= 0")
    rng = np.random.default_rng(seed)
    centers = rng.normal(0.0, center_spread, size=(classes, dims))
    labels = np.repeat(np.arange(classes), per_class)
    features = centers[labels] + rng.normal(0.0, noise, size=(labels.size, dims))
    return features, labels
