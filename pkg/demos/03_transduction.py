"""
Labelling a point cloud from a handful of labels
================================================

Three Gaussian blobs, one labelled point per blob. The game spreads the
labels through the kNN graph.
"""
import numpy as np

from gtg import GameConfig, LabelAssignment, euclidean_distance_matrix, synthetic_blobs, transduce

features, truth = synthetic_blobs(seed=1, classes=3, per_class=20, dims=2,
                                  center_spread=6.0, noise=1.0)
labels = np.full(truth.size, -1)
for c in range(3):
    labels[np.flatnonzero(truth == c)[0]] = c

assignment = LabelAssignment(labels, 3)
D = euclidean_distance_matrix(features)
result = transduce(D, assignment, GameConfig(k=5))

hits = result.predictions == truth[result.unlabeled]
print(f"{hits.sum()} / {hits.size} unlabelled points correct "
      f"({result.iterations} iterations, converged={result.converged})")
