"""
Graph transduction game engine.

Players are objects, pure strategies are class labels. Labelled players
start (and stay) on the vertex of their class; unlabelled players start at
the barycentre of the simplex. Discrete replicator dynamics then move every
unlabelled player towards the labels its neighbours support until the
strategy profile stops changing.

Class indices are 0-based throughout; ``-1`` marks an unlabelled player.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, InputError
from .similarity import build_graph

UNLABELED = -1


@dataclass(frozen=True)
class LabelAssignment:
    """Partition of the players into labelled and unlabelled sets.

    Parameters
    ----------
    labels : array_like of int
        Class index in ``[0, n_classes)`` per player, or -1 if unlabelled.
    n_classes : int, optional
        Number of pure strategies. Defaults to ``max(labels) + 1``.
    class_names : sequence of str, optional
        Display names, one per class.
    """

    labels: np.ndarray
    n_classes: int | None = None
    class_names: tuple | None = None

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64).ravel()
        labels.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        m = self.n_classes
        if m is None:
            m = int(labels.max()) + 1 if labels.size and labels.max() >= 0 else 0
        object.__setattr__(self, "n_classes", int(m))
        if np.any(labels < UNLABELED) or np.any(labels >= self.n_classes):
            raise InputError(f"class index out of range [0, {self.n_classes})")
        if self.class_names is not None:
            names = tuple(self.class_names)
            if len(names) != self.n_classes:
                raise InputError("need exactly one class name per class")
            object.__setattr__(self, "class_names", names)

    @property
    def n(self):
        return self.labels.size

    @property
    def labeled(self):
        return np.flatnonzero(self.labels != UNLABELED)

    @property
    def unlabeled(self):
        return np.flatnonzero(self.labels == UNLABELED)

    def check_classes_covered(self):
        """Raise :class:`ConfigError` if some class has no labelled player."""
        if self.n_classes < 1:
            raise ConfigError("at least one class is required")
        seen = np.bincount(self.labels[self.labeled], minlength=self.n_classes)
        missing = np.flatnonzero(seen == 0)
        if missing.size:
            raise ConfigError(f"classes without a labelled player: {missing.tolist()}")


@dataclass(frozen=True)
class GameConfig:
    k: int = 2
    epsilon: float = 1e-6
    max_iters: int = 100
    symmetric_knn: bool = False
    k_sigma: int = 7

    def __post_init__(self):
        if self.k < 1:
            raise ConfigError(f"k must be >= 1, got {self.k}")
        if not self.epsilon > 0:
            raise ConfigError(f"epsilon must be > 0, got {self.epsilon}")
        if self.max_iters < 1:
            raise ConfigError(f"max_iters must be >= 1, got {self.max_iters}")


@dataclass(frozen=True)
class GameResult:
    final_space: np.ndarray
    predictions: np.ndarray
    unlabeled: np.ndarray
    iterations: int
    converged: bool
    residuals: np.ndarray = field(repr=False)
    trajectory: list | None = field(default=None, repr=False)

    @property
    def labels(self):
        """Argmax label of every player, labelled ones included."""
        return extract_labels(self.final_space)


def init_strategy_space(assignment):
    """Initial (n, m) strategy space: one-hot rows for labelled players,
    uniform rows for the rest."""
    m = assignment.n_classes
    if m < 1:
        raise InputError("at least one class is required")
    x = np.full((assignment.n, m), 1.0 / m)
    lab = assignment.labeled
    x[lab] = 0.0
    x[lab, assignment.labels[lab]] = 1.0
    return x


def _one_hot_labeled(space, assignment):
    # labelled neighbours contribute w(i, j) to their own class only
    x = np.array(space, dtype=float, copy=True)
    lab = assignment.labeled
    x[lab] = 0.0
    x[lab, assignment.labels[lab]] = 1.0
    return x


def payoff_vector(i, space, graph, assignment):
    """Payoff of each pure strategy for player ``i``.

    ``u_i(h) = sum_{j in U_i} w(i,j) x_j(h) + sum_{j in L_i, class(j) = h} w(i,j)``
    """
    space = np.asarray(space, dtype=float)
    u = np.zeros(space.shape[1])
    labels = assignment.labels
    for j, w in zip(graph.neighbors[i], graph.weights[i]):
        if labels[j] == UNLABELED:
            u += w * space[j]
        else:
            u[labels[j]] += w
    return u


def expected_payoff(i, space, graph, assignment):
    """Payoff of player ``i`` for its current mixed strategy."""
    space = np.asarray(space, dtype=float)
    return float(space[i] @ payoff_vector(i, space, graph, assignment))


def payoff_matrix(space, graph, assignment):
    """All payoff vectors at once, as an (n, m) array."""
    return np.asarray(graph.matrix @ _one_hot_labeled(space, assignment))


def replicator_step(space, graph, assignment):
    """One synchronous step of the discrete replicator dynamics.

    Every unlabelled row is updated from the same input profile as
    ``x_i(h) * u_i(h) / u_i(x)``. Labelled rows, and unlabelled rows whose
    expected payoff is zero, are copied unchanged.
    """
    x = np.asarray(space, dtype=float)
    u = payoff_matrix(x, graph, assignment)
    fitness = x * u
    avg = fitness.sum(axis=1)
    new = x.copy()
    unl = assignment.unlabeled
    upd = unl[avg[unl] > 0]
    new[upd] = fitness[upd] / avg[upd, None]
    return new


def extract_labels(space):
    """Row-wise argmax; ties go to the lowest class index."""
    return np.argmax(np.asarray(space), axis=1)


def run_game(graph, assignment, config=None, keep_trajectory=False):
    """Iterate the replicator dynamics from the initial strategy space.

    Stops once ``||x(t+1) - x(t)||_2 <= config.epsilon`` or after
    ``config.max_iters`` steps.

    Parameters
    ----------
    graph : SimilarityGraph
    assignment : LabelAssignment
    config : GameConfig, optional
    keep_trajectory : bool
        Store every intermediate strategy space on the result.

    Returns
    -------
    GameResult
    """
    config = config or GameConfig()
    if graph.n != assignment.n:
        raise InputError(f"graph has {graph.n} players, labels have {assignment.n}")
    unl = assignment.unlabeled
    if unl.size == 0:
        raise ConfigError("no unlabelled players: nothing to predict")
    assignment.check_classes_covered()

    x = init_strategy_space(assignment)
    trajectory = [x] if keep_trajectory else None
    residuals = []
    converged = False
    for _ in range(config.max_iters):
        nxt = replicator_step(x, graph, assignment)
        res = float(np.linalg.norm(nxt - x))
        residuals.append(res)
        x = nxt
        if keep_trajectory:
            trajectory.append(x)
        if res <= config.epsilon:
            converged = True
            break
    return GameResult(
        final_space=x,
        predictions=extract_labels(x[unl]),
        unlabeled=unl,
        iterations=len(residuals),
        converged=converged,
        residuals=np.array(residuals),
        trajectory=trajectory,
    )


def transduce(D, assignment, config=None):
    """Build the similarity graph over ``D`` and play the game on it."""
    config = config or GameConfig()
    graph = build_graph(D, config.k, symmetric=config.symmetric_knn,
                        k_sigma=config.k_sigma)
    return run_game(graph, assignment, config)
