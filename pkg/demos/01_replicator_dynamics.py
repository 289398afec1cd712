"""
Replicator dynamics on a three-player game
==========================================

Two players are labelled (class A and class B); the third is unlabelled and
is connected to both, with similarity 0.8 to the A player and 0.2 to the B
player. Starting from the uniform mixed strategy, each step multiplies the
probability of a label by its payoff relative to the average payoff.
"""
import numpy as np

from gtg import GameConfig, LabelAssignment, SimilarityGraph, run_game

W = np.zeros((3, 3))
W[2, 0] = 0.8
W[2, 1] = 0.2
graph = SimilarityGraph.from_dense(W)
assignment = LabelAssignment([0, 1, -1], 2, ("A", "B"))

result = run_game(graph, assignment, GameConfig(epsilon=1e-6), keep_trajectory=True)

# The odds of A against B grow by a factor 0.8 / 0.2 = 4 at every step.
for t, x in enumerate(result.trajectory):
    print(f"t={t:2d}  x = [{x[2, 0]:.8f}, {x[2, 1]:.8f}]")

print("converged:", result.converged, "after", result.iterations, "iterations")
print("prediction:", assignment.class_names[result.predictions[0]])

###############################################################################
# The residual ||x(t+1) - x(t)|| shrinks geometrically.
print(np.array2string(result.residuals, precision=2))
