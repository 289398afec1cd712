"""Command-line front end: ``gtg {similarity,transduce,evaluate,synth}``.

Exit status is 0 on success, 1 on usage errors and 2 on data, format or
configuration errors.
"""
from __future__ import annotations

import argparse
import csv
import logging
import sys

import numpy as np

from . import io
from .errors import GTGError
from .evaluation import CLASSIFIERS, format_table, run_protocol, synthetic_blobs
from .game import GameConfig, transduce
from .similarity import euclidean_distance_matrix

log = logging.getLogger("gtg")

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def _add_io(p, labels=True):
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--distances", help="CSV dissimilarity matrix (n x n)")
    src.add_argument("--features", help="CSV feature matrix (n x d); Euclidean distances are used")
    if labels:
        p.add_argument("--labels", required=True,
                       help="CSV rows 'player_id,class_name'; rows align with the matrix rows")
    p.add_argument("--delimiter", default=",")
    p.add_argument("--no-symmetrize", action="store_true",
                   help="do not replace D by max(D, D^T) on load")


def _add_game(p):
    p.add_argument("--k", type=int, default=2, help="neighbourhood size (default 2)")
    p.add_argument("--eps", type=float, default=1e-6, help="convergence threshold (default 1e-6)")
    p.add_argument("--max-iter", type=int, default=100, help="iteration cap (default 100)")
    p.add_argument("--symmetric-knn", action="store_true",
                   help="add j to N(i) whenever i is in N(j)")


def build_parser():
    parser = _Parser(prog="gtg", description="Graph transduction games for semi-supervised classification.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("similarity", help="feature matrix -> Euclidean distance matrix")
    p.add_argument("--features", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--delimiter", default=",")

    p = sub.add_parser("transduce", help="label the unlabelled rows of a labels file")
    _add_io(p)
    _add_game(p)
    p.add_argument("--out", help="predictions CSV (default: stdout)")

    p = sub.add_parser(
        "evaluate", help="leave-one-out accuracy of GTG and nearest-neighbour baselines",
        description=(
            "Every player is the query once. With --protocol paper every class must "
            "have exactly 3 members: 2 training images per class give n runs, 1 gives "
            "2n runs (both classmates of the query in turn). --protocol loo is a "
            "generalised leave-one-out for other class sizes: one run per query, each "
            "class contributing its first --train-per-class members."))
    _add_io(p)
    _add_game(p)
    p.add_argument("--train-per-class", type=int, nargs="+", default=[1, 2], choices=[1, 2],
                   help="training images per class (default: both 1 and 2)")
    p.add_argument("--classifier", nargs="+", default=list(CLASSIFIERS), choices=CLASSIFIERS)
    p.add_argument("--protocol", choices=["paper", "loo"], default="paper")
    p.add_argument("--rep-seed", type=int, default=None,
                   help="draw other classes' training members at random with this seed")
    p.add_argument("--out", help="write the structured JSON report here")

    p = sub.add_parser("synth", help="generate Gaussian blobs with labels")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--classes", type=int, default=3)
    p.add_argument("--per-class", type=int, default=3)
    p.add_argument("--dims", type=int, default=2)
    p.add_argument("--spread", type=float, default=10.0, help="class centre spread")
    p.add_argument("--noise", type=float, default=0.1)
    p.add_argument("--out", required=True, help="features CSV")
    p.add_argument("--labels-out", required=True, help="labels CSV")
    return parser


def _distances(args):
    if args.features:
        return euclidean_distance_matrix(io.load_features(args.features, args.delimiter))
    return io.load_distance_matrix(args.distances, args.delimiter,
                                   symmetrize=not args.no_symmetrize)


def _config(args):
    return GameConfig(k=args.k, epsilon=args.eps, max_iters=args.max_iter,
                      symmetric_knn=args.symmetric_knn)


def _check_rows(D, ids):
    if D.shape[0] != len(ids):
        raise GTGError(f"matrix has {D.shape[0]} rows but the labels file has {len(ids)}")


def cmd_similarity(args):
    F = io.load_features(args.features, args.delimiter)
    io.write_matrix(args.out, euclidean_distance_matrix(F), args.delimiter)


def cmd_transduce(args):
    D = _distances(args)
    ids, assignment = io.load_labels(args.labels, args.delimiter)
    _check_rows(D, ids)
    result = transduce(D, assignment, _config(args))
    if not result.converged:
        log.warning("stopped after %d iterations without reaching eps", result.iterations)
    if args.out:
        io.write_predictions(args.out, result, ids, assignment.class_names, args.delimiter)
    else:
        w = csv.writer(sys.stdout, delimiter=args.delimiter, lineterminator="\n")
        w.writerow(["player_id", "class_name", "probability"])
        for pid, name, p in io.prediction_rows(result, ids, assignment.class_names):
            w.writerow([pid, name, f"{p:.17g}"])


def cmd_evaluate(args):
    D = _distances(args)
    ids, assignment = io.load_labels(args.labels, args.delimiter)
    _check_rows(D, ids)
    if assignment.unlabeled.size:
        raise GTGError("evaluate needs every player labelled; "
                       f"{assignment.unlabeled.size} rows have an empty class")
    config = _config(args)
    reports = [
        run_protocol(D, assignment.labels, t, clf, config,
                     protocol=args.protocol, rep_seed=args.rep_seed)
        for clf in dict.fromkeys(args.classifier)
        for t in sorted(set(args.train_per_class))
    ]
    print(format_table(reports))
    if args.out:
        io.write_report(args.out, reports, config, assignment.class_names)


def cmd_synth(args):
    F, labels = synthetic_blobs(args.seed, args.classes, args.per_class, args.dims,
                                args.spread, args.noise)
    io.write_matrix(args.out, F)
    width = len(str(labels.size - 1))
    ids = [f"p{i:0{width}d}" for i in range(labels.size)]
    io.write_labels(args.labels_out, ids, labels, [f"c{c}" for c in range(args.classes)])


COMMANDS = {"similarity": cmd_similarity, "transduce": cmd_transduce,
            "evaluate": cmd_evaluate, "synth": cmd_synth}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    try:
        COMMANDS[args.command](args)
    except (GTGError, OSError) as exc:
        print(f"gtg {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
