"""Canonical JSON documents served over HTTP and exported to static bundles.

Both transports call the same builders here, so the parity contract (API
body == bundle file, byte for byte) reduces to calling doc_bytes on the
same snapshot. Documents are pure functions of (snapshot, query): dict keys
are emitted sorted, floats rely on repr round-tripping, and percentages are
rounded to 2 decimals before serialization.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Mapping, Optional

from .alignment import (
    AlignmentMatrix,
    Dendrogram,
    MatchSet,
    Scope,
    TopicDistribution,
    grade_matrix,
    hclust_subjects,
    round_pct,
    subject_matrix,
    topic_distribution,
)
from .catalog import FrameworkCatalog, Stream
from .errors import EmptyScope, UnknownCode, UnknownSubject
from .topics import OUTLIER_TOPIC, TopicKeywords

DEFAULT_PAGE_SIZE = 50
MAX_PAGE_SIZE = 500


@dataclass(frozen=True)
class SnapshotData:
    """Everything the document builders read; derived pieces are computed
    once from the primitive artifacts so the publish and serve paths agree."""
    run_id: str
    config: Mapping[str, Any]
    catalog: FrameworkCatalog
    topic_of: Mapping[str, int]
    k: int
    keywords: TopicKeywords
    matchset: MatchSet
    matrix: AlignmentMatrix
    dendrogram: Optional[Dendrogram]
    distribution: TopicDistribution


def snapshot_data(run_id: str, config: Mapping[str, Any],
                  catalog: FrameworkCatalog, topic_of: Mapping[str, int],
                  keywords: TopicKeywords) -> SnapshotData:
    matchset = MatchSet(topic_of, catalog)
    matrix = subject_matrix(matchset, catalog)
    dendrogram = hclust_subjects(matrix) if len(matrix.row_labels) >= 2 else None
    non_outlier = sorted({t for t in topic_of.values() if t != OUTLIER_TOPIC})
    k = (non_outlier[-1] + 1) if non_outlier else 0
    return SnapshotData(
        run_id=run_id,
        config=dict(config),
        catalog=catalog,
        topic_of=dict(topic_of),
        k=k,
        keywords=keywords,
        matchset=matchset,
        matrix=matrix,
        dendrogram=dendrogram,
        distribution=topic_distribution(topic_of, catalog, keywords),
    )


def doc_bytes(doc: Mapping[str, Any]) -> bytes:
    """One canonical byte encoding per document; trailing newline included."""
    return (json.dumps(doc, sort_keys=True, separators=(",", ":"),
                       ensure_ascii=False) + "\n").encode("utf-8")


def _keyword_label(snap: SnapshotData, topic: int) -> str:
    if topic in snap.keywords.per_topic:
        return snap.keywords.label(topic)
    return ""


def programs_of(snap: SnapshotData) -> dict[str, dict[str, tuple[int, int]]]:
    raw = snap.config.get("programs") or {}
    return {name: {s: (int(span[0]), int(span[1])) for s, span in spans.items()}
            for name, spans in raw.items()}


# --- documents ---------------------------------------------------------------

def doc_filters(snap: SnapshotData) -> dict[str, Any]:
    cat = snap.catalog
    seen: dict[str, Any] = {}
    for lo in cat.los:
        if lo.subject not in seen:
            seen[lo.subject] = {"code": lo.subject,
                                "name": lo.subject_name or lo.subject,
                                "type": lo.subject_type.value}
    return {
        "run_id": snap.run_id,
        "cycles": cat.cycles(),
        "streams": [s.value for s in cat.streams() if s.value],
        "programs": sorted(programs_of(snap)),
        "subjects": [seen[s] for s in sorted(seen)],
        "grades": cat.grades(),
    }


def _dendrogram_doc(dendro: Optional[Dendrogram]) -> Optional[dict[str, Any]]:
    if dendro is None:
        return None
    return {
        "leaf_order": list(dendro.leaf_order),
        "merges": [[left, right, height, size]
                   for left, right, height, size in dendro.merges],
    }


def heatmap_scope(snap: SnapshotData, cycle: Optional[int] = None,
                  stream: Optional[str] = None,
                  program: Optional[str] = None) -> Optional[Scope]:
    if cycle is None and stream is None and program is None:
        return None
    subject_grades = None
    if program is not None:
        spans = programs_of(snap)[program]
        subject_grades = {s: frozenset(range(lo, hi + 1))
                          for s, (lo, hi) in spans.items()}
    return Scope(
        cycles=frozenset({cycle}) if cycle is not None else None,
        streams=frozenset({Stream(stream)}) if stream is not None else None,
        subject_grades=subject_grades,
    )


def doc_heatmap(snap: SnapshotData, cycle: Optional[int] = None,
                stream: Optional[str] = None,
                program: Optional[str] = None) -> dict[str, Any]:
    scope = heatmap_scope(snap, cycle, stream, program)
    if scope is None:
        matrix: Optional[AlignmentMatrix] = snap.matrix
        dendro = snap.dendrogram
    else:
        try:
            matrix = subject_matrix(snap.matchset, snap.catalog, scope)
        except EmptyScope:
            matrix = None
        dendro = (hclust_subjects(matrix)
                  if matrix is not None and len(matrix.row_labels) >= 2 else None)
    return {
        "run_id": snap.run_id,
        "scope": {"cycle": cycle, "stream": stream, "program": program},
        "subjects": list(matrix.row_labels) if matrix is not None else [],
        "cells": [[round_pct(x) for x in row] for row in matrix.cells]
                 if matrix is not None else [],
        "dendrogram": _dendrogram_doc(dendro),
    }


def _check_subjects(snap: SnapshotData, *subjects: str) -> None:
    for s in subjects:
        if s not in snap.catalog.subjects:
            raise UnknownSubject(s)


def doc_pair_grades(snap: SnapshotData, subject_a: str, subject_b: str) -> dict[str, Any]:
    _check_subjects(snap, subject_a, subject_b)
    m = grade_matrix(snap.matchset, snap.catalog, subject_a, subject_b)
    return {
        "run_id": snap.run_id,
        "subject_a": subject_a,
        "subject_b": subject_b,
        "grades_a": [int(g) for g in m.row_labels],
        "grades_b": [int(g) for g in m.col_labels],
        "cells": [[round_pct(x) for x in row] for row in m.cells],
    }


def _shared_topics(snap: SnapshotData, subject_a: str, subject_b: str) -> list[tuple[int, int]]:
    """(topic, lo count over the union of both sides) for topics present on
    both sides; within one subject a topic needs >= 2 members to pair."""
    out = []
    for t in sorted(snap.matchset.members_of):
        members = snap.matchset.members_of[t]
        in_a = [c for c in members if snap.catalog.by_code[c].subject == subject_a]
        in_b = [c for c in members if snap.catalog.by_code[c].subject == subject_b]
        if subject_a == subject_b:
            if len(in_a) >= 2:
                out.append((t, len(in_a)))
        elif in_a and in_b:
            out.append((t, len(in_a) + len(in_b)))
    return out


def doc_pair_topics(snap: SnapshotData, subject_a: str, subject_b: str) -> dict[str, Any]:
    _check_subjects(snap, subject_a, subject_b)
    shared = _shared_topics(snap, subject_a, subject_b)
    shared.sort(key=lambda tc: (-tc[1], tc[0]))
    return {
        "run_id": snap.run_id,
        "subject_a": subject_a,
        "subject_b": subject_b,
        "topics": [{"topic_id": t, "keywords": _keyword_label(snap, t), "count": c}
                   for t, c in shared],
    }


def _pair_rows(snap: SnapshotData, subject_a: str, subject_b: str) -> list[dict[str, Any]]:
    rows = []
    by_code = snap.catalog.by_code
    for t in sorted(snap.matchset.members_of):
        members = snap.matchset.members_of[t]
        in_a = sorted(c for c in members if by_code[c].subject == subject_a)
        if subject_a == subject_b:
            pairs = [(x, y) for i, x in enumerate(in_a) for y in in_a[i + 1:]]
        else:
            in_b = sorted(c for c in members if by_code[c].subject == subject_b)
            pairs = [(x, y) for x in in_a for y in in_b]
        label = _keyword_label(snap, t)
        for x, y in pairs:
            a, b = by_code[x], by_code[y]
            rows.append({
                "code_a": a.code, "text_a": a.text, "grade_a": a.grade,
                "code_b": b.code, "text_b": b.text, "grade_b": b.grade,
                "topic_id": t, "keywords": label,
            })
    rows.sort(key=lambda r: (r["topic_id"], r["code_a"], r["code_b"]))
    return rows


def doc_pair_los(snap: SnapshotData, subject_a: str, subject_b: str,
                 topic: Optional[int] = None, grade: Optional[int] = None,
                 min_match_pct: Optional[float] = None,
                 page: int = 1, page_size: int = DEFAULT_PAGE_SIZE) -> dict[str, Any]:
    """Paged pair table. min_match_pct gates on the directed subject-level
    cell(A,B): below the threshold the table is empty rather than thinned."""
    _check_subjects(snap, subject_a, subject_b)
    rows = _pair_rows(snap, subject_a, subject_b)
    if min_match_pct is not None:
        if round_pct(snap.matrix.cell(subject_a, subject_b)) < min_match_pct:
            rows = []
    if topic is not None:
        rows = [r for r in rows if r["topic_id"] == topic]
    if grade is not None:
        rows = [r for r in rows if r["grade_a"] == grade]
    total = len(rows)
    start = (page - 1) * page_size
    return {
        "run_id": snap.run_id,
        "subject_a": subject_a,
        "subject_b": subject_b,
        "filters": {"topic": topic, "grade": grade, "min_match_pct": min_match_pct},
        "page": page,
        "page_size": page_size,
        "total": total,
        "rows": rows[start:start + page_size],
    }


def doc_topic(snap: SnapshotData, topic_id: int) -> dict[str, Any]:
    members = []
    total = 0
    by_subject = snap.distribution.counts.get(topic_id, {})
    for subject in sorted(by_subject):
        for g in sorted(by_subject[subject]):
            n = by_subject[subject][g]
            members.append({"subject": subject, "grade": g, "count": n})
            total += n
    terms = snap.keywords.per_topic.get(topic_id, ())
    return {
        "run_id": snap.run_id,
        "topic_id": topic_id,
        "keywords": [{"term": t, "score": s} for t, s in terms],
        "members": members,
        "total": total,
    }


def doc_lo_matches(snap: SnapshotData, code: str) -> dict[str, Any]:
    lo = snap.catalog.by_code.get(code)
    if lo is None:
        raise UnknownCode(code)
    matched = sorted(snap.matchset.matches(code))
    return {
        "run_id": snap.run_id,
        "code": code,
        "subject": lo.subject,
        "topic_id": snap.topic_of[code],
        "matches": [{
            "code": c,
            "subject": snap.catalog.by_code[c].subject,
            "grade": snap.catalog.by_code[c].grade,
            "text": snap.catalog.by_code[c].text,
        } for c in matched],
    }


# --- static bundle enumeration ----------------------------------------------

def enumerate_bundle(snap: SnapshotData):
    """Yield (relative path, document) for every default-query document the
    live API can serve, mirroring the /api/v1 route layout."""
    yield "filters.json", doc_filters(snap)
    yield "heatmap.json", doc_heatmap(snap)
    subjects = sorted(snap.catalog.subjects)
    for a in subjects:
        for b in subjects:
            yield f"pairs/{a}/{b}/grades.json", doc_pair_grades(snap, a, b)
            yield f"pairs/{a}/{b}/topics.json", doc_pair_topics(snap, a, b)
            yield f"pairs/{a}/{b}/los.json", doc_pair_los(snap, a, b)
    for t in range(snap.k):
        yield f"topics/{t}.json", doc_topic(snap, t)
    for lo in snap.catalog.los:
        yield f"los/{lo.code}/matches.json", doc_lo_matches(snap, lo.code)
