"""
Leave-one-out protocol against nearest-neighbour baselines
==========================================================

Sixty classes with three members each. Every member is the query once;
training uses one or two members per class. Distances here come from
synthetic features; with real data pass a precomputed dissimilarity
matrix instead (``gtg evaluate --distances D.csv --labels L.csv``).
"""
import numpy as np

from gtg import GameConfig, euclidean_distance_matrix, format_table, run_protocol, synthetic_blobs

features, labels = synthetic_blobs(seed=3, classes=60, per_class=3, dims=16,
                                   center_spread=1.0, noise=0.6)
D = euclidean_distance_matrix(features)

reports = [run_protocol(D, labels, t, clf, GameConfig(k=2))
           for clf in ("acc-nn", "nn", "gtg") for t in (1, 2)]
print(format_table(reports))
