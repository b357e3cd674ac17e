import math
import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from curralign.errors import BadK, DegenerateInput, NoTopics
from curralign.textprep import TokenizedDoc
from curralign.topics import (
    OUTLIER_TOPIC,
    TopicAssignment,
    assign_topics,
    ctfidf_keywords,
    default_k,
    fit_pca,
    kmeans_fit,
    transform,
)

from helpers import oracle_ctfidf, random_docs_and_topics


# --- PCA -------------------------------------------------------------------

def test_pca_variance_example():
    # two points on each axis; variance 8/3 along y, 2/3 along x (divisor n-1)
    X = np.array([[1.0, 0.0], [-1.0, 0.0], [0.0, 2.0], [0.0, -2.0]])
    model = fit_pca(X, d=2)
    assert model.explained_variance == pytest.approx([8.0 / 3.0, 2.0 / 3.0], abs=1e-12)
    # leading axis is y, second is x; largest coordinate made positive
    assert model.components[0] == pytest.approx([0.0, 1.0], abs=1e-12)
    assert model.components[1] == pytest.approx([1.0, 0.0], abs=1e-12)


def _random_X(seed, n, dim):
    rng = np.random.default_rng(seed)
    return rng.normal(size=(n, dim))


@given(st.integers(0, 10_000))
@settings(max_examples=40, deadline=None)
def test_pca_orthonormal_and_ordered(seed):
    X = _random_X(seed, 30, 8)
    model = fit_pca(X, d=5)
    gram = model.components @ model.components.T
    assert np.max(np.abs(gram - np.eye(5))) <= 1e-8
    ev = model.explained_variance
    assert all(ev[i] >= ev[i + 1] - 1e-12 for i in range(len(ev) - 1))
    assert all(v >= 0 for v in ev)


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_pca_full_rank_reconstruction(seed):
    X = _random_X(seed, 20, 6)
    model = fit_pca(X, d=6)
    Y = transform(model, X)
    X_hat = Y @ model.components + model.mean
    assert np.max(np.abs(X - X_hat)) <= 1e-6


def test_pca_sign_convention_deterministic():
    X = _random_X(4, 25, 5)
    a = fit_pca(X, d=3)
    b = fit_pca(X.copy(), d=3)
    assert np.array_equal(a.components, b.components)
    for row in a.components:
        assert row[int(np.argmax(np.abs(row)))] > 0


def test_pca_degenerate_input():
    X = np.ones((5, 3))
    with pytest.raises(DegenerateInput):
        fit_pca(X, d=2)


def test_pca_rejects_bad_shapes():
    with pytest.raises(ValueError):
        fit_pca(np.zeros((1, 4)), d=1)
    with pytest.raises(ValueError):
        fit_pca(np.zeros((5, 4)), d=0)
    with pytest.raises(ValueError):
        fit_pca(np.zeros((5, 4)), d=5)


# --- k-means -----------------------------------------------------------------

@given(st.integers(0, 10_000))
@settings(max_examples=100, deadline=None)
def test_kmeans_trace_non_increasing_and_labels_nearest(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(5, 40))
    d = int(rng.integers(1, 5))
    k = int(rng.integers(1, n + 1))
    Y = rng.normal(size=(n, d))
    result = kmeans_fit(Y, k, seed=seed)
    trace = result.inertia_trace
    assert all(trace[i] >= trace[i + 1] - 1e-9 for i in range(len(trace) - 1))
    assert result.inertia == trace[-1]
    # every label is its nearest centroid, ties to the lowest index
    d2 = ((Y[:, None, :] - result.centroids[None, :, :]) ** 2).sum(axis=2)
    assert np.array_equal(result.labels, np.argmin(d2, axis=1))


def test_kmeans_k_equals_n_zero_inertia():
    Y = np.arange(12, dtype=float).reshape(6, 2)
    result = kmeans_fit(Y, 6, seed=0)
    assert result.inertia == pytest.approx(0.0, abs=1e-12)
    assert sorted(result.labels) == list(range(6))


def test_kmeans_k1_centroid_is_mean():
    Y = _random_X(2, 17, 3)
    result = kmeans_fit(Y, 1, seed=0)
    assert result.centroids[0] == pytest.approx(Y.mean(axis=0))


def test_kmeans_deterministic_per_seed():
    Y = _random_X(9, 30, 2)
    a = kmeans_fit(Y, 4, seed=5)
    b = kmeans_fit(Y, 4, seed=5)
    assert np.array_equal(a.labels, b.labels)
    assert np.array_equal(a.centroids, b.centroids)


def test_kmeans_bad_k():
    Y = np.zeros((4, 2))
    with pytest.raises(BadK):
        kmeans_fit(Y, 0, seed=0)
    with pytest.raises(BadK):
        kmeans_fit(Y, 5, seed=0)


# --- sizing and assignment ------------------------------------------------------

def test_default_k_examples():
    assert default_k(7431) == 413
    assert default_k(1) == 1
    assert default_k(18) == 1
    assert default_k(9) == 1  # round(0.5) banks to 0, floored to 1
    assert default_k(27) == 2
    assert default_k(100) == 6


def _ids(n):
    return [f"XXX.1.1.01.{i:03d}" for i in range(n)]


def test_assign_topics_renumbers_by_size():
    Y = np.array([[0.0], [0.1], [0.2], [5.0], [5.1], [9.0]])
    result = kmeans_fit(Y, 3, seed=0)
    assignment = assign_topics(_ids(6), result, seed=0, min_topic_size=2)
    sizes = {}
    for t in assignment.topic_of.values():
        sizes[t] = sizes.get(t, 0) + 1
    assert sizes[0] == 3 and sizes[1] == 2  # largest first
    assert sizes[OUTLIER_TOPIC] == 1  # singleton below min size
    assert assignment.k == 2


def test_assign_topics_tie_breaks_by_original_index():
    Y = np.array([[0.0], [0.1], [5.0], [5.1]])
    result = kmeans_fit(Y, 2, seed=0)
    assignment = assign_topics(_ids(4), result, seed=0, min_topic_size=2)
    # equal sizes: topic 0 must be the cluster with the lower original index
    order = [assignment.topic_of[i] for i in _ids(4)]
    first_cluster = result.labels[0]
    expected_topic_for_first = 0 if first_cluster == min(result.labels) else 1
    assert order[0] == expected_topic_for_first
    assert assignment.k == 2


def test_assign_topics_all_outliers():
    Y = np.array([[0.0], [1.0], [2.0]])
    result = kmeans_fit(Y, 3, seed=0)
    assignment = assign_topics(_ids(3), result, seed=0, min_topic_size=2)
    assert set(assignment.topic_of.values()) == {OUTLIER_TOPIC}
    assert assignment.k == 0


def test_assign_topics_length_mismatch():
    Y = np.zeros((3, 1))
    result = kmeans_fit(Y, 1, seed=0)
    with pytest.raises(ValueError):
        assign_topics(_ids(4), result, seed=0)


# --- c-TF-IDF ---------------------------------------------------------------

def _assignment(topic_of, k):
    return TopicAssignment(topic_of=topic_of, k=k,
                           centroids=np.zeros((k, 1)), inertia=0.0, seed=0)


def test_ctfidf_score_example():
    # one term appearing 4 times in its class, nowhere else; 20 tokens over
    # 2 classes so A=10 and f=4: W = 4 * ln(1 + 10/4) = 4 * ln(3.5)
    docs = [
        TokenizedDoc("T.1.1.01.001", ("alpha",) * 4 + ("pad",) * 6),
        TokenizedDoc("T.1.1.01.002", ("beta",) * 4 + ("pad",) * 6),
    ]
    topic_of = {"T.1.1.01.001": 0, "T.1.1.01.002": 1}
    kw = ctfidf_keywords(_assignment(topic_of, 2), docs)
    scores = dict(kw.per_topic[0])
    assert scores["alpha"] == pytest.approx(4 * math.log(3.5), abs=1e-12)
    assert scores["alpha"] == pytest.approx(5.0106, abs=1e-3)


def test_ctfidf_tie_breaks_lexicographically():
    docs = [TokenizedDoc("T.1.1.01.001", ("zebra", "apple"))]
    kw = ctfidf_keywords(_assignment({"T.1.1.01.001": 0}, 1), docs)
    terms = [t for t, _ in kw.per_topic[0]]
    assert terms == ["apple", "zebra"]


def test_ctfidf_outliers_excluded():
    docs = [
        TokenizedDoc("T.1.1.01.001", ("alpha", "beta")),
        TokenizedDoc("T.1.1.01.002", ("gamma",)),
    ]
    kw = ctfidf_keywords(_assignment({"T.1.1.01.001": 0,
                                      "T.1.1.01.002": OUTLIER_TOPIC}, 1), docs)
    all_terms = {t for pairs in kw.per_topic.values() for t, _ in pairs}
    assert "gamma" not in all_terms


def test_ctfidf_no_topics_raises():
    with pytest.raises(NoTopics):
        ctfidf_keywords(_assignment({"T.1.1.01.001": OUTLIER_TOPIC}, 0),
                        [TokenizedDoc("T.1.1.01.001", ("x",))])


def test_ctfidf_matches_oracle_randomized():
    rng = random.Random(99)
    for _ in range(30):
        docs, topic_of, k = random_docs_and_topics(rng)
        kw = ctfidf_keywords(_assignment(topic_of, k), docs)
        want = oracle_ctfidf(docs, topic_of, k)
        for topic in range(k):
            got = kw.per_topic.get(topic, ())
            assert [t for t, _ in got] == [t for t, _ in want[topic]]
            for (_, s_got), (_, s_want) in zip(got, want[topic]):
                assert s_got == pytest.approx(s_want, abs=1e-9)


def test_keyword_label_top3():
    docs = [TokenizedDoc("T.1.1.01.001", ("dd", "cc", "cc", "bb", "bb", "bb",
                                          "aa", "aa", "aa", "aa"))]
    kw = ctfidf_keywords(_assignment({"T.1.1.01.001": 0}, 1), docs)
    assert kw.label(0) == "aa|bb|cc"
