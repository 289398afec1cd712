"""Graph transduction games: semi-supervised labelling by replicator dynamics."""
from .baselines import TrainingSet, accumulated_nn_classify, nn_classify
from .errors import ConfigError, FormatError, GTGError, InputError, ProtocolError
from .evaluation import (AccuracyReport, ProtocolSplit, build_splits, format_table,
                         run_protocol, synthetic_blobs)
from .game import (GameConfig, GameResult, LabelAssignment, expected_payoff,
                   extract_labels, init_strategy_space, payoff_vector,
                   replicator_step, run_game, transduce)
from .similarity import (SimilarityGraph, build_graph, euclidean_distance_matrix,
                         knn_neighborhoods, local_scales, similarity_from_distance,
                         symmetrize_max)

__version__ = "0.1.0"
