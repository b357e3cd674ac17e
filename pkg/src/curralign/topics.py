"""Topic modeling: PCA reduction, seeded k-means, outlier handling, c-TF-IDF.

Every step is deterministic for a fixed seed: PCA uses an exact
eigendecomposition with a fixed sign convention, k-means++ draws from a
seeded generator, and all tie-breaks are total (lowest index, then
lexicographic). The -1 topic collects members of clusters smaller than
min_topic_size; outliers never match anything downstream.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .errors import BadK, DegenerateInput, DimMismatch, NoTopics
from .textprep import TokenizedDoc

OUTLIER_TOPIC = -1
DEFAULT_REDUCED_DIM = 5
DEFAULT_MIN_TOPIC_SIZE = 2
LOS_PER_TOPIC = 18  # paper-scale ratio: ~7431 LOs over >400 topics


@dataclass(frozen=True)
class PcaModel:
    mean: np.ndarray  # (dim,)
    components: np.ndarray  # (d, dim), orthonormal rows
    explained_variance: np.ndarray  # (d,), non-increasing

    @property
    def d(self) -> int:
        return self.components.shape[0]

    @property
    def dim(self) -> int:
        return self.components.shape[1]


@dataclass(frozen=True)
class KmeansResult:
    centroids: np.ndarray  # (k, d)
    labels: np.ndarray  # (n,), int
    inertia: float
    inertia_trace: tuple[float, ...]
    n_iter: int


@dataclass(frozen=True)
class TopicAssignment:
    topic_of: Mapping[str, int]  # lo_code -> topic id, -1 = outlier
    k: int  # number of non-outlier topics
    centroids: np.ndarray  # (k, d), reordered to topic numbering
    inertia: float
    seed: int
    min_topic_size: int = DEFAULT_MIN_TOPIC_SIZE

    def members(self) -> dict[int, list[str]]:
        out: dict[int, list[str]] = {}
        for code, t in self.topic_of.items():
            out.setdefault(t, []).append(code)
        return out


@dataclass(frozen=True)
class TopicKeywords:
    per_topic: Mapping[int, tuple[tuple[str, float], ...]]  # topic -> (term, score) desc

    def label(self, topic: int, top: int = 3) -> str:
        terms = [t for t, _ in self.per_topic.get(topic, ())[:top]]
        return "|".join(terms)


def fit_pca(X: np.ndarray, d: int) -> PcaModel:
    """Exact PCA of the top-d principal axes of mean-centered X.

    Sample covariance uses divisor n-1. Sign convention: the
    largest-magnitude coordinate of each component is positive.
    """
    X = np.asarray(X, dtype=np.float64)
    n, dim = X.shape
    if n < 2:
        raise ValueError(f"fit_pca needs n >= 2 rows, got {n}")
    if not 1 <= d <= min(n - 1, dim):
        raise ValueError(f"d={d} out of range for n={n}, dim={dim}")
    mean = X.mean(axis=0)
    Xc = X - mean
    if not Xc.any():
        raise DegenerateInput()
    cov = (Xc.T @ Xc) / (n - 1)
    eigvals, eigvecs = np.linalg.eigh(cov)
    order = np.argsort(eigvals, kind="stable")[::-1][:d]
    variance = np.maximum(eigvals[order], 0.0)
    components = eigvecs[:, order].T.copy()
    for row in components:
        j = int(np.argmax(np.abs(row)))
        if row[j] < 0:
            row *= -1.0
    return PcaModel(mean=mean, components=components, explained_variance=variance)


def transform(model: PcaModel, X: np.ndarray) -> np.ndarray:
    X = np.asarray(X, dtype=np.float64)
    if X.shape[-1] != model.dim:
        raise DimMismatch(model.dim, X.shape[-1])
    return (X - model.mean) @ model.components.T


def _pairwise_sq(Y: np.ndarray, C: np.ndarray) -> np.ndarray:
    d2 = (Y * Y).sum(axis=1)[:, None] - 2.0 * (Y @ C.T) + (C * C).sum(axis=1)[None, :]
    return np.maximum(d2, 0.0)


def _kmeanspp_init(Y: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    n = Y.shape[0]
    chosen = [int(rng.integers(n))]
    d2 = ((Y - Y[chosen[0]]) ** 2).sum(axis=1)
    for _ in range(1, k):
        total = float(d2.sum())
        if total <= 0.0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        chosen.append(idx)
        d2 = np.minimum(d2, ((Y - Y[idx]) ** 2).sum(axis=1))
    return Y[chosen].copy()


def kmeans_fit(Y: np.ndarray, k: int, seed: int,
               max_iter: int = 300, tol: float = 1e-6) -> KmeansResult:
    """Lloyd's algorithm with k-means++ seeding from a seeded RNG.

    Ties in the nearest-centroid assignment go to the lowest centroid index;
    an empty cluster is reseeded to the farthest point from its assigned
    centroid. The inertia trace is non-increasing across iterations.
    """
    Y = np.asarray(Y, dtype=np.float64)
    n = Y.shape[0]
    if not 1 <= k <= n:
        raise BadK(k, n)
    rng = np.random.default_rng(seed)
    C = _kmeanspp_init(Y, k, rng)
    trace: list[float] = []
    n_iter = 0
    for n_iter in range(1, max_iter + 1):
        labels, d2min, C = _assign_with_reseed(Y, C)
        trace.append(float(d2min.sum()))
        newC = C.copy()
        for j in range(k):
            mask = labels == j
            if mask.any():
                newC[j] = Y[mask].mean(axis=0)
        shift = float(np.sqrt(((newC - C) ** 2).sum(axis=1)).max())
        C = newC
        if shift < tol:
            break
    d2 = _pairwise_sq(Y, C)
    labels = d2.argmin(axis=1)
    inertia = float(d2[np.arange(n), labels].sum())
    trace.append(inertia)
    return KmeansResult(centroids=C, labels=labels, inertia=inertia,
                        inertia_trace=tuple(trace), n_iter=n_iter)


def _assign_with_reseed(Y: np.ndarray, C: np.ndarray):
    k = C.shape[0]
    C = C.copy()
    for _ in range(k):
        d2 = _pairwise_sq(Y, C)
        labels = d2.argmin(axis=1)
        counts = np.bincount(labels, minlength=k)
        empty = np.flatnonzero(counts == 0)
        if empty.size == 0:
            return labels, d2[np.arange(Y.shape[0]), labels], C
        d2min = d2[np.arange(Y.shape[0]), labels]
        farthest = np.argsort(-d2min, kind="stable")
        for j, idx in zip(empty, farthest):
            C[j] = Y[idx]
    d2 = _pairwise_sq(Y, C)
    labels = d2.argmin(axis=1)
    return labels, d2[np.arange(Y.shape[0]), labels], C


def default_k(n: int) -> int:
    """max(1, round(n / 18)); the ratio matches paper-scale topic granularity."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return max(1, round(n / LOS_PER_TOPIC))


def assign_topics(ids: Sequence[str], result: KmeansResult,
                  seed: int, min_topic_size: int = DEFAULT_MIN_TOPIC_SIZE) -> TopicAssignment:
    """Renumber clusters to topics 0..k'-1 by decreasing size (ties: lower
    original index); clusters below min_topic_size become the outlier topic."""
    labels = result.labels
    if len(ids) != len(labels):
        raise ValueError(f"{len(ids)} ids for {len(labels)} cluster labels")
    counts = Counter(int(c) for c in labels)
    keep = [(c, size) for c, size in counts.items() if size >= min_topic_size]
    keep.sort(key=lambda cs: (-cs[1], cs[0]))
    renumber = {orig: new for new, (orig, _) in enumerate(keep)}
    topic_of = {lo: renumber.get(int(c), OUTLIER_TOPIC) for lo, c in zip(ids, labels)}
    k = len(keep)
    if k:
        centroids = result.centroids[[orig for orig, _ in keep]].copy()
    else:
        centroids = np.empty((0, result.centroids.shape[1]))
    return TopicAssignment(topic_of=topic_of, k=k, centroids=centroids,
                           inertia=result.inertia, seed=seed,
                           min_topic_size=min_topic_size)


def ctfidf_keywords(assignment: TopicAssignment, docs: Sequence[TokenizedDoc],
                    top_k: int = 10) -> TopicKeywords:
    """Class-based TF-IDF: W(t,c) = tf(t,c) * ln(1 + A / f(t)).

    tf(t,c) counts term t inside class c, f(t) is t's total count over all
    classes, and A is the mean token count per class. Outlier documents do
    not form a class and contribute to neither f nor A. Ranking ties break
    lexicographically; only terms present in the class are listed.
    """
    if assignment.k == 0:
        raise NoTopics()
    tf: dict[int, Counter] = {t: Counter() for t in range(assignment.k)}
    for doc in docs:
        topic = assignment.topic_of.get(doc.lo_code, OUTLIER_TOPIC)
        if topic == OUTLIER_TOPIC:
            continue
        tf[topic].update(doc.tokens)
    f: Counter = Counter()
    total_tokens = 0
    for counter in tf.values():
        f.update(counter)
        total_tokens += sum(counter.values())
    a = total_tokens / assignment.k
    per_topic: dict[int, tuple[tuple[str, float], ...]] = {}
    for topic, counter in tf.items():
        scored = [(term, count * math.log(1.0 + a / f[term]))
                  for term, count in counter.items()]
        scored.sort(key=lambda ts: (-ts[1], ts[0]))
        per_topic[topic] = tuple(scored[:top_k])
    return TopicKeywords(per_topic=per_topic)
