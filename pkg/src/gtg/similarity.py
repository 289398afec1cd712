"""
Similarity graphs for graph transduction.

Players are connected to their k nearest neighbours; each directed edge
(i, j) carries the locally scaled similarity

    w(i, j) = exp(-d(i, j) / (sigma_i * sigma_j))

where sigma_i is the distance from i to its 7th nearest neighbour
(self-tuning local scaling). The partial payoff matrix between i and j is
``w(i, j) * I_m`` and is never materialised: the graph only stores w.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.spatial.distance import pdist, squareform

from .errors import ConfigError, InputError

SIGMA_FLOOR = 1e-12
K_SIGMA = 7


def _as_square(D):
    D = np.asarray(D, dtype=float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise InputError(f"dissimilarity matrix must be square, got shape {D.shape}")
    return D


def euclidean_distance_matrix(features):
    """Pairwise L2 distances between the rows of ``features``.

    Parameters
    ----------
    features : (n, d) array_like
        One feature vector per player.

    Returns
    -------
    D : (n, n) ndarray
        Symmetric with an exactly zero diagonal.
    """
    F = np.asarray(features, dtype=float)
    if F.ndim == 1:
        F = F[:, None]
    if F.ndim != 2 or F.shape[0] < 2 or F.shape[1] < 1:
        raise InputError(f"need an (n >= 2, d >= 1) feature matrix, got shape {F.shape}")
    if not np.all(np.isfinite(F)):
        raise InputError("feature matrix contains NaN or infinite values")
    return squareform(pdist(F, metric="euclidean"))


def symmetrize_max(D):
    """Return ``max(D, D.T)`` elementwise; the diagonal is left untouched."""
    D = _as_square(D)
    out = np.maximum(D, D.T)
    np.fill_diagonal(out, np.diag(D))
    return out


def _other_players(n, i):
    return np.concatenate([np.arange(i), np.arange(i + 1, n)])


def local_scales(D, k_sigma=K_SIGMA, floor=SIGMA_FLOOR):
    """Per-player bandwidths for the similarity kernel.

    sigma_i is the distance from i to its ``min(k_sigma, n - 1)``-th nearest
    other player, clamped below at ``floor`` so duplicate points do not
    produce a zero bandwidth.
    """
    D = _as_square(D)
    n = D.shape[0]
    if n < 2:
        raise InputError("local scaling needs at least two players")
    if k_sigma < 1:
        raise ConfigError(f"k_sigma must be >= 1, got {k_sigma}")
    rank = min(int(k_sigma), n - 1)
    sigma = np.empty(n)
    for i in range(n):
        # self is excluded by index: a duplicate point also sits at distance 0
        others = np.sort(D[i, _other_players(n, i)])
        sigma[i] = others[rank - 1]
    return np.maximum(sigma, floor)


def similarity_from_distance(D, scales, i, j):
    """Similarity between players ``i`` and ``j`` under local scaling."""
    if i == j:
        raise ValueError("self-similarity is undefined for the game graph")
    return float(np.exp(-D[i, j] / (scales[i] * scales[j])))


@dataclass(frozen=True)
class SimilarityGraph:
    """Directed weighted kNN graph.

    ``neighbors[i]`` holds the neighbourhood of player i in ascending index
    order and ``weights[i]`` the matching similarities. The CSR view is what
    the solver multiplies with; its rows keep the same ascending order so
    every payoff sum is accumulated in a fixed order.
    """

    n: int
    k: int
    neighbors: tuple
    weights: tuple
    _csr: sp.csr_matrix = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.neighbors) != self.n or len(self.weights) != self.n:
            raise InputError("neighbour lists must have one entry per player")
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(nb) for nb in self.neighbors])
        indices = (np.concatenate(self.neighbors).astype(np.int64)
                   if self.n else np.empty(0, dtype=np.int64))
        data = (np.concatenate(self.weights).astype(float)
                if self.n else np.empty(0))
        W = sp.csr_matrix((data, indices, indptr), shape=(self.n, self.n))
        object.__setattr__(self, "_csr", W)

    @property
    def matrix(self):
        """Sparse (n, n) similarity matrix; row i is zero outside N_i."""
        return self._csr

    def weight(self, i, j):
        nb = self.neighbors[i]
        pos = np.searchsorted(nb, j)
        if pos < len(nb) and nb[pos] == j:
            return float(self.weights[i][pos])
        return 0.0

    def scaled(self, c):
        """Same topology with every weight multiplied by ``c``."""
        return SimilarityGraph(self.n, self.k, self.neighbors,
                               tuple(w * c for w in self.weights))

    @classmethod
    def from_dense(cls, W, k=None):
        """Build a graph from a dense weight matrix; nonzero off-diagonal
        entries become edges."""
        W = _as_square(W)
        n = W.shape[0]
        nbrs, wts = [], []
        for i in range(n):
            cols = np.flatnonzero(W[i])
            cols = cols[cols != i]
            nbrs.append(cols.astype(np.int64))
            wts.append(W[i, cols].astype(float))
        kk = k if k is not None else max((len(c) for c in nbrs), default=0)
        return cls(n, kk, tuple(nbrs), tuple(wts))


def knn_neighborhoods(D, k, scales=None, symmetric=False, k_sigma=K_SIGMA):
    """Build the kNN similarity graph from a symmetric dissimilarity matrix.

    Parameters
    ----------
    D : (n, n) array_like
        Symmetric dissimilarities with a zero diagonal.
    k : int
        Neighbourhood size; clamped to ``n - 1``.
    scales : array_like, optional
        Precomputed local scales. Computed with :func:`local_scales` over all
        of ``D`` when omitted.
    symmetric : bool
        If True, add j to N_i whenever i is in N_j.
    k_sigma : int
        Neighbour rank used for the local scales when ``scales`` is None.

    Returns
    -------
    SimilarityGraph

    Notes
    -----
    Nearest-neighbour ties are resolved in favour of the lower player index.
    """
    if k < 1:
        raise ConfigError(f"k must be >= 1, got {k}")
    D = _as_square(D)
    n = D.shape[0]
    if n < 2:
        raise InputError("a game needs at least two players")
    if scales is None:
        scales = local_scales(D, k_sigma)
    scales = np.asarray(scales, dtype=float)
    kk = min(int(k), n - 1)

    chosen = []
    for i in range(n):
        others = _other_players(n, i)
        order = np.argsort(D[i, others], kind="stable")
        chosen.append(set(others[order[:kk]].tolist()))
    if symmetric:
        for i in range(n):
            for j in list(chosen[i]):
                chosen[j].add(i)

    nbrs, wts = [], []
    for i in range(n):
        cols = np.array(sorted(chosen[i]), dtype=np.int64)
        nbrs.append(cols)
        wts.append(np.exp(-D[i, cols] / (scales[i] * scales[cols])))
    return SimilarityGraph(n, kk, tuple(nbrs), tuple(wts))


def build_graph(D, k=2, symmetric=False, k_sigma=K_SIGMA):
    """Local scales plus kNN graph over every player in ``D``."""
    return knn_neighborhoods(D, k, local_scales(D, k_sigma), symmetric=symmetric)
