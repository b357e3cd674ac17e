"""End-to-end acceptance checks, one test per guarantee.

Each test pins a user-facing property of the whole system: deterministic
publishing, paper-scale counting, oracle agreement of the analytics, the
asymmetry of the matching percentage, numerical soundness of the reducer
and clusterer, recovery of planted structure, calibrated consistency, and
transport-level byte parity. Tolerances are stated inline.
"""

import http.client
import json
import random
import threading
import time
from collections import Counter

import numpy as np
import pytest

from curralign import apidocs
from curralign.alignment import (
    MatchSet,
    format_pct,
    grade_matrix,
    round_pct,
    subject_matrix,
)
from curralign.catalog import catalog_stats, catalog_to_csv
from curralign.pipeline import PipelineConfig, run_pipeline
from curralign.runstore import list_runs, load_run
from curralign.service import ApiServer, main
from curralign.synthetic import corrupted_consistency_fixture, planted_corpus
from curralign.topics import OUTLIER_TOPIC, fit_pca, kmeans_fit, transform
from curralign.validation import ConsistencyLevel, framework_consistency

from helpers import (
    OUTLIER,
    adjusted_rand_index,
    asymmetry_fixture,
    make_lo,
    oracle_consistency,
    oracle_ctfidf,
    oracle_pair_rows,
    random_catalog_and_topics,
    random_docs_and_topics,
)
from curralign.catalog import FrameworkCatalog
from curralign.topics import TopicAssignment, ctfidf_keywords


def test_01_cli_run_is_deterministic(tmp_path):
    """`run` twice on one input: same run_id, bit-identical artifacts, <10s each."""
    corpus = planted_corpus(target_los=500, seed=0)
    assert len(corpus.catalog) == 500
    src = tmp_path / "catalog.csv"
    src.write_text(catalog_to_csv(corpus.catalog), "utf-8")

    d1, d2 = tmp_path / "a", tmp_path / "b"
    for out in (d1, d2):
        t0 = time.monotonic()
        assert main(["run", "--input", str(src), "--out", str(out)]) == 0
        assert time.monotonic() - t0 < 10.0

    (run_id,) = list_runs(d1)
    assert list_runs(d2) == [run_id]
    m1 = load_run(d1 / run_id).manifest
    m2 = load_run(d2 / run_id).manifest
    assert m1.run_id == m2.run_id == run_id
    assert m1.artifacts == m2.artifacts  # created_at may differ; artifacts must not
    for art in m1.artifacts:
        assert (d1 / run_id / art.path).read_bytes() == \
            (d2 / run_id / art.path).read_bytes()


def test_02_catalog_counting_at_scale():
    """7431 LOs: ordered_pair_count == 55,212,330, computed in <5s."""
    los = [make_lo(f"S{(i // 3) % 12:02d}A.1.{i // 3:04d}.01.{i % 3 + 1:03d}",
                   subject=f"S{(i // 3) % 12:02d}A", grade=(i // 3) % 12 + 1)
           for i in range(7431)]
    t0 = time.monotonic()
    stats = catalog_stats(FrameworkCatalog(los))
    assert time.monotonic() - t0 < 5.0
    assert stats.n_los == 7431
    assert stats.ordered_pair_count == 55_212_330
    assert stats.n_subjects == 12
    assert stats.n_standards == 2477
    assert sum(stats.per_subject_counts.values()) == 7431


def _brute_hits(catalog, topic_of):
    """code -> same-topic peers, straight from the matching definition."""
    by_topic: dict[int, list[str]] = {}
    for lo in catalog.los:
        t = topic_of[lo.code]
        if t != OUTLIER:
            by_topic.setdefault(t, []).append(lo.code)
    return {lo.code: [c for c in by_topic.get(topic_of[lo.code], []) if c != lo.code]
            if topic_of[lo.code] != OUTLIER else []
            for lo in catalog.los}


def test_03_analytics_agree_with_oracles():
    """1000 randomized trials (250 per analytic, n <= 200): counts exact,
    scores within 1e-9, total under 60s."""
    t0 = time.monotonic()

    rng = random.Random(1001)
    for _ in range(250):  # subject matrix
        catalog, topic_of = random_catalog_and_topics(rng, max_n=200)
        matrix = subject_matrix(MatchSet(topic_of, catalog), catalog)
        hits = _brute_hits(catalog, topic_of)
        subject_of = {lo.code: lo.subject for lo in catalog.los}
        for a in matrix.row_labels:
            a_codes = [lo.code for lo in catalog.by_subject[a]]
            for b in matrix.col_labels:
                matched = sum(1 for c in a_codes
                              if any(subject_of[h] == b for h in hits[c]))
                assert matrix.cell(a, b) == \
                    pytest.approx(100.0 * matched / len(a_codes), abs=1e-9)

    rng = random.Random(1002)
    for _ in range(250):  # grade matrix
        catalog, topic_of = random_catalog_and_topics(rng, max_n=200)
        subjects = sorted(catalog.subjects)
        a, b = rng.choice(subjects), rng.choice(subjects)
        gm = grade_matrix(MatchSet(topic_of, catalog), catalog, a, b)
        hits = _brute_hits(catalog, topic_of)
        info = {lo.code: (lo.subject, lo.grade) for lo in catalog.los}
        for g1 in gm.row_labels:
            bucket = [lo.code for lo in catalog.by_subject[a]
                      if lo.grade == int(g1)]
            for g2 in gm.col_labels:
                matched = sum(1 for c in bucket
                              if any(info[h] == (b, int(g2)) for h in hits[c]))
                assert gm.cell(g1, g2) == \
                    pytest.approx(100.0 * matched / len(bucket), abs=1e-9)

    rng = random.Random(1003)
    for _ in range(250):  # framework consistency, both levels
        catalog, topic_of = random_catalog_and_topics(rng, max_n=200)
        ms = MatchSet(topic_of, catalog)
        for level, strand in ((ConsistencyLevel.STANDARD, False),
                              (ConsistencyLevel.STRAND, True)):
            report = framework_consistency(ms, catalog, level)
            n_eligible, n_consistent, per_subject = oracle_consistency(
                catalog, topic_of, strand_level=strand)
            assert (report.n_eligible, report.n_consistent) == (n_eligible, n_consistent)
            for subject, (e, c) in per_subject.items():
                assert (report.per_subject[subject].n_eligible,
                        report.per_subject[subject].n_consistent) == (e, c)

    rng = random.Random(1004)
    for _ in range(250):  # keyword scoring
        docs, topic_of, k = random_docs_and_topics(rng)
        assignment = TopicAssignment(topic_of=topic_of, k=k,
                                     centroids=np.zeros((k, 1)), inertia=0.0, seed=0)
        kw = ctfidf_keywords(assignment, docs)
        want = oracle_ctfidf(docs, topic_of, k)
        for topic in range(k):
            got = kw.per_topic.get(topic, ())
            assert [t for t, _ in got] == [t for t, _ in want[topic]]
            for (_, s_got), (_, s_want) in zip(got, want[topic]):
                assert s_got == pytest.approx(s_want, abs=1e-9)

    assert time.monotonic() - t0 < 60.0


def test_04_matching_percentage_is_asymmetric():
    """Fixture where cell(A,B)=50.00 while cell(B,A)=33.33."""
    catalog, topic_of = asymmetry_fixture()
    matrix = subject_matrix(MatchSet(topic_of, catalog), catalog)
    assert round_pct(matrix.cell("AAA", "BBB")) == 50.00
    assert round_pct(matrix.cell("BBB", "AAA")) == 33.33
    assert format_pct(matrix.cell("AAA", "BBB")) == "50.00"
    assert format_pct(matrix.cell("BBB", "AAA")) == "33.33"


def test_05_reducer_and_clusterer_are_sound():
    """100 random datasets: components orthonormal within 1e-8, full-rank
    reconstruction within 1e-6, variances non-increasing, k-means inertia
    trace non-increasing, labels = nearest centroid."""
    rng = np.random.default_rng(42)
    for trial in range(100):
        n = int(rng.integers(5, 41))
        dim = int(rng.integers(2, 9))
        X = rng.normal(size=(n, dim))

        d = min(dim, n - 1)
        model = fit_pca(X, d)
        gram = model.components @ model.components.T
        assert np.max(np.abs(gram - np.eye(d))) <= 1e-8
        ev = model.explained_variance
        assert all(ev[i] >= ev[i + 1] for i in range(len(ev) - 1))
        Y = transform(model, X)
        if d == dim:  # full rank: projection loses nothing
            X_hat = Y @ model.components + model.mean
            assert np.max(np.abs(X - X_hat)) <= 1e-6

        k = int(rng.integers(1, n + 1))
        result = kmeans_fit(Y, k, seed=trial)
        trace = result.inertia_trace
        assert all(trace[i] >= trace[i + 1] - 1e-9 for i in range(len(trace) - 1))
        d2 = ((Y[:, None, :] - result.centroids[None, :, :]) ** 2).sum(axis=2)
        assert np.array_equal(result.labels, np.argmin(d2, axis=1))


def test_06_planted_structure_is_recovered():
    """12 subjects, 30 templates with >= 70% within-template token share:
    ARI >= 0.80, standard-level consistency >= 0.90, and the flagged
    cross-subject topics are exactly the planted cross templates, <120s."""
    t0 = time.monotonic()
    corpus = planted_corpus(n_templates=30, n_cross=6, n_subjects=12, seed=0)
    assert len(corpus.catalog.subjects) == 12
    assert len(set(corpus.template_of.values())) == 30

    # fixture precondition: same-template LOs share >= 70% of the 20-word vocab
    by_template: dict[int, list[str]] = {}
    for lo in corpus.catalog.los:
        by_template.setdefault(corpus.template_of[lo.code], []).append(lo.text)
    check = random.Random(0)
    for _ in range(200):
        texts = by_template[check.randrange(30)]
        a, b = check.sample(texts, 2)
        shared = set(a.lower().split()) & set(b.lower().split())
        assert len(shared) >= 14  # 0.70 * 20

    config = PipelineConfig(k=30, seed=1, reduced_dim=12)
    outputs = run_pipeline(corpus.catalog, config)

    codes = [lo.code for lo in corpus.catalog.los]
    truth = [corpus.template_of[c] for c in codes]
    pred = [outputs.assignment.topic_of[c] for c in codes]
    assert adjusted_rand_index(truth, pred) >= 0.80
    assert outputs.consistency_standard.accuracy >= 0.90

    # map each recovered topic to its majority template; the flagged topics
    # must cover the planted cross templates exactly
    members: dict[int, list[int]] = {}
    for code in codes:
        t = outputs.assignment.topic_of[code]
        if t != OUTLIER_TOPIC:
            members.setdefault(t, []).append(corpus.template_of[code])
    majority = {t: Counter(v).most_common(1)[0][0] for t, v in members.items()}
    flagged = {majority[t] for t in outputs.cross_topics}
    assert flagged == set(corpus.cross_template_ids)
    assert time.monotonic() - t0 < 120.0


def test_07_consistency_is_calibrated():
    """Knocking 10% of LOs out of their standards yields accuracy 0.90+/-0.02."""
    catalog, topic_of, expected = corrupted_consistency_fixture(
        n_standards=100, los_per_standard=5, corrupt_fraction=0.10, seed=0)
    assert expected == pytest.approx(0.90, abs=1e-12)
    report = framework_consistency(MatchSet(topic_of, catalog), catalog,
                                   ConsistencyLevel.STANDARD)
    assert report.n_eligible == 500
    assert report.accuracy == pytest.approx(0.90, abs=0.02)


def test_08_live_api_matches_static_bundle(published):
    """Every exported document equals its live HTTP body byte for byte, and
    page concatenation reproduces the brute-force pair listing."""
    snap = published["snapshot"].data
    server = ApiServer(("127.0.0.1", 0), snap)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    port = server.server_address[1]

    def fetch(path):
        conn = http.client.HTTPConnection("127.0.0.1", port, timeout=10)
        try:
            conn.request("GET", path)
            resp = conn.getresponse()
            return resp.status, resp.read()
        finally:
            conn.close()

    try:
        assert len(published["bundle_files"]) > 200
        for rel in published["bundle_files"]:
            status, body = fetch("/api/v1/" + rel[:-len(".json")])
            assert status == 200
            assert body == (published["bundle_dir"] / rel).read_bytes()

        subjects = sorted(snap.catalog.subjects)
        a, b = max(((x, y) for x in subjects for y in subjects),
                   key=lambda p: apidocs.doc_pair_los(snap, *p, page_size=500)["total"])
        unpaged = apidocs.doc_pair_los(snap, a, b, page_size=500)
        assert 5 < unpaged["total"] <= 500
        rows = []
        page = 1
        while True:
            status, body = fetch(f"/api/v1/pairs/{a}/{b}/los?page={page}&page_size=5")
            assert status == 200
            doc = json.loads(body)
            assert doc["total"] == unpaged["total"]
            if not doc["rows"]:
                break
            rows.extend(doc["rows"])
            page += 1
        assert rows == unpaged["rows"]
        want = oracle_pair_rows(snap.catalog, snap.topic_of, a, b)
        assert [(r["code_a"], r["code_b"], r["topic_id"]) for r in rows] == want
    finally:
        server.shutdown()
        server.server_close()
        thread.join(timeout=5)
