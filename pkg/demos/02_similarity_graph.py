"""
kNN similarity graphs with local scaling
========================================

Each point gets a bandwidth equal to the distance to its 7th nearest
neighbour, so dense and sparse regions both produce usable similarities.
"""
import numpy as np

from gtg import euclidean_distance_matrix, knn_neighborhoods, local_scales

rng = np.random.default_rng(0)
tight = rng.normal(0.0, 0.1, size=(10, 2))
loose = rng.normal(5.0, 2.0, size=(10, 2))
points = np.vstack([tight, loose])

D = euclidean_distance_matrix(points)
sigma = local_scales(D)
print("bandwidths, tight cluster:", np.round(sigma[:10], 3))
print("bandwidths, loose cluster:", np.round(sigma[10:], 3))

graph = knn_neighborhoods(D, k=2, scales=sigma)
for i in (0, 10):
    print(f"player {i}: neighbours {graph.neighbors[i].tolist()}, "
          f"weights {np.round(graph.weights[i], 3).tolist()}")

###############################################################################
# Neighbourhoods are directed by default; ``symmetric=True`` adds the
# reverse edges.
sym = knn_neighborhoods(D, k=2, scales=sigma, symmetric=True)
print("edges:", graph.matrix.nnz, "directed,", sym.matrix.nnz, "symmetric")
