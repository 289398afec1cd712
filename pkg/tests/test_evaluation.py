import numpy as np
import pytest

from gtg.baselines import nn_classify
from gtg.errors import InputError, ProtocolError
from gtg.evaluation import (build_splits, format_table, run_protocol,
                            synthetic_blobs)
from gtg.game import GameConfig
from gtg.similarity import euclidean_distance_matrix


def three_per_class(m):
    return np.repeat(np.arange(m), 3)


@pytest.mark.parametrize("m,t,count", [(60, 2, 180), (60, 1, 360), (2, 2, 6), (5, 1, 30)])
def test_split_counts(m, t, count):
    assert len(build_splits(three_per_class(m), t)) == count


@pytest.mark.parametrize("t", [1, 2])
def test_split_structure(t):
    labels = three_per_class(6)
    for s in build_splits(labels, t):
        assert s.query not in s.training.members
        counts = np.bincount(s.training.classes, minlength=6)
        assert counts.tolist() == [t] * 6
        assert np.array_equal(labels[s.training.members], s.training.classes)
        assert np.all(np.diff(s.training.members) > 0)


def test_one_per_class_enumerates_both_classmates():
    splits = build_splits(three_per_class(3), 1)
    own = [s.training.members[s.training.classes == 0][0] for s in splits if s.query == 0]
    assert own == [1, 2]
    # other classes: lowest-index representative
    s = splits[0]
    assert s.training.members.tolist() == [1, 3, 6]


def test_rep_seed_is_deterministic_and_valid():
    labels = three_per_class(10)
    a = build_splits(labels, 1, rep_seed=3)
    b = build_splits(labels, 1, rep_seed=3)
    assert [s.training.members.tolist() for s in a] == [s.training.members.tolist() for s in b]
    default = build_splits(labels, 1)
    assert any(not np.array_equal(x.training.members, y.training.members)
               for x, y in zip(a, default))
    for s in a:
        assert np.bincount(s.training.classes, minlength=10).tolist() == [1] * 10


def test_paper_protocol_requires_three_per_class():
    with pytest.raises(ProtocolError):
        build_splits([0, 0, 0, 1, 1], 1)
    with pytest.raises(ProtocolError):
        build_splits(three_per_class(2), 3)


def test_generalised_loo():
    labels = np.repeat(np.arange(3), 4)
    splits = build_splits(labels, 2, protocol="loo")
    assert len(splits) == 12
    for s in splits:
        assert s.query not in s.training.members
        assert np.bincount(s.training.classes).tolist() == [2, 2, 2]
    with pytest.raises(ProtocolError):
        build_splits(labels, 4, protocol="loo")


def test_separable_points_gtg_perfect():
    # intra-class distance 0.1, inter-class 10
    pts = np.array([[10.0 * c, 0.1 * r] for c in range(3) for r in range(2)] +
                   [[10.0 * c, 0.05] for c in range(3)])
    order = np.argsort(np.r_[np.repeat(np.arange(3), 2), np.arange(3)], kind="stable")
    pts = pts[order]
    labels = three_per_class(3)
    D = euclidean_distance_matrix(pts)
    rep = run_protocol(D, labels, 2, "gtg")
    assert rep.runs == 9 and rep.correct == 9 and rep.accuracy == 1.0
    nn = run_protocol(D, labels, 2, "nn")
    assert nn.correct == 9


def test_acc_nn_equals_nn_with_one_per_class():
    F, labels = synthetic_blobs(5, classes=6, per_class=3, noise=4.0)
    D = euclidean_distance_matrix(F)
    a = run_protocol(D, labels, 1, "acc-nn")
    b = run_protocol(D, labels, 1, "nn")
    assert (a.runs, a.correct) == (b.runs, b.correct)
    assert np.array_equal(a.confusion, b.confusion)


def test_report_consistency_and_determinism(monkeypatch):
    F, labels = synthetic_blobs(2, classes=5, per_class=3, noise=3.0)
    D = euclidean_distance_matrix(F)
    seq = run_protocol(D, labels, 1, "gtg", workers=1)
    par = run_protocol(D, labels, 1, "gtg", workers=4)
    monkeypatch.setenv("GTG_THREADS", "3")
    env = run_protocol(D, labels, 1, "gtg")
    for r in (par, env):
        assert r.to_dict() == seq.to_dict()
    assert seq.accuracy * seq.runs == seq.correct
    assert seq.confusion.sum() + seq.failed == seq.runs


def test_failures_are_counted(monkeypatch):
    import gtg.evaluation as ev
    from gtg.errors import ConfigError

    real = ev.run_game
    calls = []

    def flaky(graph, assignment, config):
        calls.append(1)
        if len(calls) % 2:
            raise ConfigError("boom")
        return real(graph, assignment, config)

    monkeypatch.setattr(ev, "run_game", flaky)
    F, labels = synthetic_blobs(0)
    rep = run_protocol(euclidean_distance_matrix(F), labels, 2, "gtg")
    assert rep.runs == 9 and rep.failed == 5
    assert rep.confusion.sum() == 4 and rep.correct == 4
    assert all("boom" in e for e in rep.errors)


def test_unknown_classifier():
    with pytest.raises(InputError):
        run_protocol(np.zeros((3, 3)), [0, 0, 0], 2, "svm")


def test_blobs_noise_free_clusters_collapse():
    F, labels = synthetic_blobs(1, classes=4, per_class=3, noise=0.0)
    D = euclidean_distance_matrix(F)
    same = labels[:, None] == labels[None, :]
    assert np.all(D[same] == 0.0)


def test_blobs_deterministic():
    a = synthetic_blobs(7, classes=3, per_class=3, dims=5)
    b = synthetic_blobs(7, classes=3, per_class=3, dims=5)
    assert a[0].tobytes() == b[0].tobytes() and np.array_equal(a[1], b[1])


def test_blobs_gtg_perfect_and_matches_nn():
    for seed in range(5):
        F, labels = synthetic_blobs(seed)
        D = euclidean_distance_matrix(F)
        gtg = run_protocol(D, labels, 2, "gtg", GameConfig())
        assert gtg.accuracy == 1.0
        # oracle: direct nearest-neighbour scan over each split
        assert run_protocol(D, labels, 2, "nn").accuracy == 1.0
        for s in build_splits(labels, 2):
            assert nn_classify(D[s.query, s.training.members], s.training) == labels[s.query]


def test_format_table_layout():
    F, labels = synthetic_blobs(0)
    D = euclidean_distance_matrix(F)
    reps = [run_protocol(D, labels, t, c) for c in ("gtg", "nn") for t in (1, 2)]
    text = format_table(reps)
    assert "18 / 18" in text and "9 / 9" in text
    assert text.splitlines()[2].startswith("gtg")
