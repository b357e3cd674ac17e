"""Shared test utilities: tiny catalog builders and independent oracles.

The oracles recompute the library's analytics by direct definition (nested
loops over LO pairs, plain dict counting) so agreement is meaningful:
implementation and oracle share input data but no code path.
"""

from __future__ import annotations

import math
import random
from typing import Mapping, Optional, Sequence

from curralign.catalog import FrameworkCatalog, LearningOutcome, Stream, SubjectType
from curralign.textprep import TokenizedDoc

OUTLIER = -1


def make_lo(code: str, *, text: str = "placeholder text", subject: Optional[str] = None,
            grade: int = 1, stream: Stream = Stream.MAIN,
            subject_name: str = "", subject_type: SubjectType = SubjectType.UNSPECIFIED,
            cycle: Optional[int] = None, domain: str = "", strand: str = "",
            standard: str = "") -> LearningOutcome:
    return LearningOutcome(
        code=code,
        text=text,
        subject=subject if subject is not None else code.split(".", 1)[0],
        subject_name=subject_name,
        subject_type=subject_type,
        grade=grade,
        stream=stream,
        cycle=cycle,
        domain_label=domain,
        strand_label=strand,
        standard_label=standard,
        standard_key=code.rsplit(".", 1)[0],
    )


def asymmetry_fixture() -> tuple[FrameworkCatalog, dict[str, int]]:
    """Two subjects whose directed matching percentages differ: 50.00 one way,
    33.33 the other."""
    los = [
        make_lo("AAA.1.1.01.001", grade=1),
        make_lo("AAA.1.1.01.002", grade=1),
        make_lo("AAA.1.1.02.001", grade=2),
        make_lo("AAA.1.1.02.002", grade=2),
        make_lo("BBB.1.1.01.001", grade=1),
        make_lo("BBB.1.1.02.001", grade=2),
        make_lo("BBB.1.1.02.002", grade=2),
    ]
    topic_of = {
        "AAA.1.1.01.001": 1,
        "AAA.1.1.01.002": 1,
        "AAA.1.1.02.001": 2,
        "AAA.1.1.02.002": OUTLIER,
        "BBB.1.1.01.001": 1,
        "BBB.1.1.02.001": 3,
        "BBB.1.1.02.002": 3,
    }
    return FrameworkCatalog(los), topic_of


# --- brute-force oracles -------------------------------------------------------

def oracle_matches(catalog: FrameworkCatalog, topic_of: Mapping[str, int],
                   code: str) -> set[str]:
    t = topic_of[code]
    if t == OUTLIER:
        return set()
    return {lo.code for lo in catalog.los
            if lo.code != code and topic_of[lo.code] == t}


def oracle_subject_cell(catalog: FrameworkCatalog, topic_of: Mapping[str, int],
                        subject_a: str, subject_b: str,
                        los: Optional[Sequence[LearningOutcome]] = None) -> float:
    pool = list(los) if los is not None else list(catalog.los)
    side_a = [lo for lo in pool if lo.subject == subject_a]
    matched = 0
    for lo in side_a:
        hits = oracle_matches(catalog, topic_of, lo.code)
        if any(catalog.by_code[c].subject == subject_b for c in hits):
            matched += 1
    return 100.0 * matched / len(side_a)


def oracle_grade_cell(catalog: FrameworkCatalog, topic_of: Mapping[str, int],
                      subject_a: str, subject_b: str, grade_a: int,
                      grade_b: int) -> float:
    side_a = [lo for lo in catalog.los
              if lo.subject == subject_a and lo.grade == grade_a]
    matched = 0
    for lo in side_a:
        hits = oracle_matches(catalog, topic_of, lo.code)
        if any(catalog.by_code[c].subject == subject_b
               and catalog.by_code[c].grade == grade_b for c in hits):
            matched += 1
    return 100.0 * matched / len(side_a)


def oracle_consistency(catalog: FrameworkCatalog, topic_of: Mapping[str, int],
                       strand_level: bool = False):
    """(n_eligible, n_consistent, per-subject dict) by direct definition."""
    def group(lo):
        return (lo.subject, lo.strand_label) if strand_level else lo.standard_key

    members: dict = {}
    for lo in catalog.los:
        members.setdefault(group(lo), []).append(lo)
    n_eligible = n_consistent = 0
    per_subject: dict[str, list[int]] = {}
    for lo in catalog.los:
        peers = members[group(lo)]
        if len(peers) < 2:
            continue
        n_eligible += 1
        bucket = per_subject.setdefault(lo.subject, [0, 0])
        bucket[0] += 1
        hits = oracle_matches(catalog, topic_of, lo.code)
        if any(other.code in hits for other in peers if other.code != lo.code):
            n_consistent += 1
            bucket[1] += 1
    return n_eligible, n_consistent, per_subject


def oracle_ctfidf(docs: Sequence[TokenizedDoc], topic_of: Mapping[str, int],
                  k: int, top_k: int = 10) -> dict[int, list[tuple[str, float]]]:
    tf: dict[int, dict[str, int]] = {c: {} for c in range(k)}
    for doc in docs:
        c = topic_of.get(doc.lo_code, OUTLIER)
        if c == OUTLIER:
            continue
        for tok in doc.tokens:
            tf[c][tok] = tf[c].get(tok, 0) + 1
    f: dict[str, int] = {}
    total = 0
    for counts in tf.values():
        for tok, n in counts.items():
            f[tok] = f.get(tok, 0) + n
            total += n
    a = total / k
    out: dict[int, list[tuple[str, float]]] = {}
    for c in range(k):
        scored = [(tok, n * math.log(1.0 + a / f[tok]))
                  for tok, n in tf[c].items()]
        scored.sort(key=lambda ts: (-ts[1], ts[0]))
        out[c] = scored[:top_k]
    return out


def oracle_pair_rows(catalog: FrameworkCatalog, topic_of: Mapping[str, int],
                     subject_a: str, subject_b: str) -> list[tuple[str, str, int]]:
    """(code_a, code_b, topic) rows sorted like the pair table."""
    by_topic: dict[int, list[str]] = {}
    for lo in catalog.los:
        t = topic_of[lo.code]
        if t != OUTLIER:
            by_topic.setdefault(t, []).append(lo.code)
    rows = []
    for t, codes in by_topic.items():
        in_a = sorted(c for c in codes if catalog.by_code[c].subject == subject_a)
        if subject_a == subject_b:
            pairs = [(x, y) for i, x in enumerate(in_a) for y in in_a[i + 1:]]
        else:
            in_b = sorted(c for c in codes if catalog.by_code[c].subject == subject_b)
            pairs = [(x, y) for x in in_a for y in in_b]
        rows.extend((x, y, t) for x, y in pairs)
    rows.sort(key=lambda r: (r[2], r[0], r[1]))
    return rows


def adjusted_rand_index(labels_a: Sequence, labels_b: Sequence) -> float:
    """ARI from the pair-counting contingency table."""
    assert len(labels_a) == len(labels_b)
    n = len(labels_a)
    table: dict[tuple, int] = {}
    rows: dict = {}
    cols: dict = {}
    for x, y in zip(labels_a, labels_b):
        table[(x, y)] = table.get((x, y), 0) + 1
        rows[x] = rows.get(x, 0) + 1
        cols[y] = cols.get(y, 0) + 1

    def c2(m: int) -> int:
        return m * (m - 1) // 2

    sum_ij = sum(c2(v) for v in table.values())
    sum_a = sum(c2(v) for v in rows.values())
    sum_b = sum(c2(v) for v in cols.values())
    expected = sum_a * sum_b / c2(n)
    max_index = (sum_a + sum_b) / 2
    if max_index == expected:
        return 1.0
    return (sum_ij - expected) / (max_index - expected)


# --- randomized inputs ----------------------------------------------------------

_SUBJECT_POOL = ("ALG", "BOT", "CIV", "DRM", "ECO", "FRN")


def random_catalog_and_topics(rng: random.Random, max_n: int = 200,
                              with_strands: bool = True):
    """Random catalog plus a random (not pipeline-derived) topic assignment."""
    n_subjects = rng.randint(2, min(6, len(_SUBJECT_POOL)))
    subjects = list(_SUBJECT_POOL[:n_subjects])
    n = rng.randint(max(4, n_subjects), max_n)
    k = rng.randint(1, max(1, n // 3))
    los = []
    topic_of = {}
    serial_of: dict[str, int] = {}
    for _ in range(n):
        subject = rng.choice(subjects)
        grade = rng.randint(1, 12)
        # a few standards per (subject, grade) so groups vary in size
        std = rng.randint(1, 3)
        key = f"{subject}.1.{std}.{grade:02d}"
        serial_of[key] = serial_of.get(key, 0) + 1
        code = f"{key}.{serial_of[key]:03d}"
        los.append(make_lo(
            code, subject=subject, grade=grade,
            strand=f"St{std}" if with_strands else "",
            text=f"outcome {std} {grade}",
        ))
        topic_of[code] = OUTLIER if rng.random() < 0.15 else rng.randrange(k)
    return FrameworkCatalog(los), topic_of


_VOCAB = [f"term{i:02d}" for i in range(40)]


def random_docs_and_topics(rng: random.Random, max_docs: int = 60):
    """Random tokenized docs with a dense random cluster assignment for
    keyword-scoring trials."""
    n = rng.randint(4, max_docs)
    k = rng.randint(1, 6)
    docs = []
    topic_of = {}
    for i in range(n):
        code = f"DOC.1.1.01.{i:03d}"
        n_tokens = rng.randint(1, 12)
        docs.append(TokenizedDoc(code, tuple(rng.choice(_VOCAB)
                                             for _ in range(n_tokens))))
        topic_of[code] = OUTLIER if rng.random() < 0.1 else rng.randrange(k)
    # keep at least one non-outlier member so A is well-defined
    if all(t == OUTLIER for t in topic_of.values()):
        topic_of[docs[0].lo_code] = 0
    return docs, topic_of, k
