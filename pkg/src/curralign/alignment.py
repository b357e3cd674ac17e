"""Matched-pair analytics: asymmetric matrices, distributions, spirality.

Two LOs match when they share a non-outlier topic. The matching percentage
from subject A to subject B counts LOs of A with at least one match in B,
normalized by |A| -- a directional quantity, so cell(A,B) and cell(B,A)
genuinely differ and nothing here symmetrizes them. The diagonal counts LOs
matched to a *different* LO of the same subject.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional, Sequence

from .catalog import FrameworkCatalog, LearningOutcome, Stream
from .errors import (
    CoverageGap,
    EmptyScope,
    TooFewSubjects,
    UnknownSubject,
)
from .topics import OUTLIER_TOPIC, TopicAssignment, TopicKeywords


def round_pct(x: float) -> float:
    """Percentages are reported at 2 decimals, round-half-even."""
    return round(x, 2)


def format_pct(x: float) -> str:
    return f"{round_pct(x):.2f}"


class MatchSet:
    """Topic-membership view of the catalog; pairs materialize lazily."""

    def __init__(self, topic_of: Mapping[str, int], catalog: FrameworkCatalog):
        for lo in catalog.los:
            if lo.code not in topic_of:
                raise CoverageGap(lo.code)
        self.topic_of: dict[str, int] = {lo.code: topic_of[lo.code] for lo in catalog.los}
        self.catalog = catalog
        self.members_of: dict[int, list[str]] = {}
        for lo in catalog.los:
            t = self.topic_of[lo.code]
            if t != OUTLIER_TOPIC:
                self.members_of.setdefault(t, []).append(lo.code)

    def matches(self, lo_code: str) -> frozenset[str]:
        t = self.topic_of[lo_code]
        if t == OUTLIER_TOPIC:
            return frozenset()
        return frozenset(c for c in self.members_of[t] if c != lo_code)

    def topics(self) -> list[int]:
        return sorted(self.members_of)


def build_matches(assignment: TopicAssignment, catalog: FrameworkCatalog) -> MatchSet:
    return MatchSet(assignment.topic_of, catalog)


@dataclass(frozen=True)
class Scope:
    """Optional LO filter: any combination of cycles, streams, grades, and a
    per-subject grade restriction (used for named programs)."""
    cycles: Optional[frozenset[int]] = None
    streams: Optional[frozenset[Stream]] = None
    grades: Optional[frozenset[int]] = None
    subject_grades: Optional[Mapping[str, frozenset[int]]] = None

    def admits(self, lo: LearningOutcome) -> bool:
        if self.cycles is not None and lo.cycle not in self.cycles:
            return False
        if self.streams is not None and lo.stream not in self.streams:
            return False
        if self.grades is not None and lo.grade not in self.grades:
            return False
        if self.subject_grades is not None:
            allowed = self.subject_grades.get(lo.subject)
            if allowed is None or lo.grade not in allowed:
                return False
        return True


@dataclass(frozen=True)
class AlignmentMatrix:
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    cells: tuple[tuple[float, ...], ...]  # percentage in [0,100]; rows normalize

    def cell(self, row: str, col: str) -> float:
        return self.cells[self.row_labels.index(row)][self.col_labels.index(col)]

    def to_csv(self) -> str:
        import csv as _csv
        import io as _io
        buf = _io.StringIO()
        w = _csv.writer(buf, lineterminator="\n")
        w.writerow([""] + list(self.col_labels))
        for label, row in zip(self.row_labels, self.cells):
            w.writerow([label] + [format_pct(x) for x in row])
        return buf.getvalue()


def _scoped_los(catalog: FrameworkCatalog, scope: Optional[Scope]) -> list[LearningOutcome]:
    if scope is None:
        return list(catalog.los)
    return [lo for lo in catalog.los if scope.admits(lo)]


def subject_matrix(matchset: MatchSet, catalog: FrameworkCatalog,
                   scope: Optional[Scope] = None) -> AlignmentMatrix:
    """cell(A,B) = 100 * |{lo in A : matches(lo) integral B != 0}| / |A|, within scope."""
    los = _scoped_los(catalog, scope)
    subjects = sorted({lo.subject for lo in los})
    if not subjects:
        raise EmptyScope()
    # per-topic member counts by subject, restricted to the scoped universe
    topic_counts: dict[int, dict[str, int]] = {}
    subj_totals = {s: 0 for s in subjects}
    subj_topics: dict[str, dict[int, int]] = {s: {} for s in subjects}
    for lo in los:
        subj_totals[lo.subject] += 1
        t = matchset.topic_of[lo.code]
        if t == OUTLIER_TOPIC:
            continue
        topic_counts.setdefault(t, {}).setdefault(lo.subject, 0)
        topic_counts[t][lo.subject] += 1
        subj_topics[lo.subject][t] = topic_counts[t][lo.subject]
    cells = []
    for a in subjects:
        row = []
        for b in subjects:
            matched = 0
            for t, count_a in subj_topics[a].items():
                count_b = topic_counts[t].get(b, 0)
                if a == b:
                    if count_a >= 2:
                        matched += count_a
                elif count_b >= 1:
                    matched += count_a
            row.append(100.0 * matched / subj_totals[a] if subj_totals[a] else 0.0)
        cells.append(tuple(row))
    labels = tuple(subjects)
    return AlignmentMatrix(row_labels=labels, col_labels=labels, cells=tuple(cells))


def grade_matrix(matchset: MatchSet, catalog: FrameworkCatalog,
                 subject_a: str, subject_b: str) -> AlignmentMatrix:
    """Grade-level drill-down for one directed subject pair; grades with no
    LOs on their side are absent from the axis rather than zero-filled."""
    for s in (subject_a, subject_b):
        if s not in catalog.subjects:
            raise UnknownSubject(s)
    a_los = catalog.by_subject[subject_a]
    b_los = catalog.by_subject[subject_b]
    row_grades = sorted({lo.grade for lo in a_los})
    col_grades = sorted({lo.grade for lo in b_los})
    # topic -> grade -> count on the B side
    b_topic_grade: dict[int, dict[int, int]] = {}
    for lo in b_los:
        t = matchset.topic_of[lo.code]
        if t == OUTLIER_TOPIC:
            continue
        b_topic_grade.setdefault(t, {}).setdefault(lo.grade, 0)
        b_topic_grade[t][lo.grade] += 1
    cells = []
    for g1 in row_grades:
        bucket = [lo for lo in a_los if lo.grade == g1]
        row = []
        for g2 in col_grades:
            matched = 0
            for lo in bucket:
                t = matchset.topic_of[lo.code]
                if t == OUTLIER_TOPIC:
                    continue
                count_b = b_topic_grade.get(t, {}).get(g2, 0)
                if subject_a == subject_b and g1 == g2:
                    if count_b >= 2:  # needs a sibling other than itself
                        matched += 1
                elif count_b >= 1:
                    matched += 1
            row.append(100.0 * matched / len(bucket))
        cells.append(tuple(row))
    return AlignmentMatrix(row_labels=tuple(str(g) for g in row_grades),
                           col_labels=tuple(str(g) for g in col_grades),
                           cells=tuple(cells))


@dataclass(frozen=True)
class TopicDistribution:
    counts: Mapping[int, Mapping[str, Mapping[int, int]]]  # topic -> subject -> grade -> n
    labels: Mapping[int, str]  # topic -> keyword display label
    subjects: frozenset[str]  # full catalog subject universe
    n_non_outlier: int

    def topic_total(self, topic: int) -> int:
        return sum(n for by_grade in self.counts[topic].values() for n in by_grade.values())

    def subject_support(self, topic: int) -> int:
        return len(self.counts[topic])

    def to_csv(self) -> str:
        import csv as _csv
        import io as _io
        buf = _io.StringIO()
        w = _csv.writer(buf, lineterminator="\n")
        w.writerow(["topic_id", "keywords", "subject", "grade", "count"])
        for topic in sorted(self.counts):
            for subject in sorted(self.counts[topic]):
                for grade in sorted(self.counts[topic][subject]):
                    w.writerow([topic, self.labels.get(topic, ""), subject, grade,
                                self.counts[topic][subject][grade]])
        return buf.getvalue()


def topic_distribution(topic_of: Mapping[str, int], catalog: FrameworkCatalog,
                       keywords: Optional[TopicKeywords] = None) -> TopicDistribution:
    counts: dict[int, dict[str, dict[int, int]]] = {}
    n = 0
    for lo in catalog.los:
        t = topic_of[lo.code]
        if t == OUTLIER_TOPIC:
            continue
        n += 1
        by_subject = counts.setdefault(t, {})
        by_grade = by_subject.setdefault(lo.subject, {})
        by_grade[lo.grade] = by_grade.get(lo.grade, 0) + 1
    labels = {}
    if keywords is not None:
        labels = {t: keywords.label(t) for t in counts}
    return TopicDistribution(counts=counts, labels=labels,
                             subjects=catalog.subjects, n_non_outlier=n)


def cross_subject_topics(dist: TopicDistribution, min_subjects: int = 4) -> list[int]:
    """Topics covered in at least min_subjects subjects ("more than three"),
    sorted by subject support desc, then topic size desc, then id."""
    hits = [t for t in dist.counts if dist.subject_support(t) >= min_subjects]
    hits.sort(key=lambda t: (-dist.subject_support(t), -dist.topic_total(t), t))
    return hits


@dataclass(frozen=True)
class SpiralityEntry:
    topic_id: int
    grades: tuple[int, ...]  # grades where the topic touches the subject
    gaps: tuple[int, ...]  # grades missing strictly between min and max


def spirality_report(dist: TopicDistribution, subject: str) -> list[SpiralityEntry]:
    if subject not in dist.subjects:
        raise UnknownSubject(subject)
    out = []
    for topic in sorted(dist.counts):
        by_grade = dist.counts[topic].get(subject)
        if not by_grade:
            continue
        grades = tuple(sorted(by_grade))
        gaps = tuple(g for g in range(grades[0] + 1, grades[-1]) if g not in by_grade)
        out.append(SpiralityEntry(topic_id=topic, grades=grades, gaps=gaps))
    return out


@dataclass(frozen=True)
class Dendrogram:
    """Average-linkage merge tree over subjects. Leaves are numbered by the
    sorted subject order; internal node i is len(labels)+i."""
    labels: tuple[str, ...]
    merges: tuple[tuple[int, int, float, int], ...]  # (left, right, height, size)
    leaf_order: tuple[str, ...]


def hclust_subjects(matrix: AlignmentMatrix) -> Dendrogram:
    """Agglomerative average linkage on d(A,B) = 1 - (cell(A,B)+cell(B,A))/200.

    Equal-distance candidates break lexicographically by the merged pair's
    canonical (sorted subject tuple) names; leaf order comes from a
    smaller-subtree-first traversal.
    """
    labels = matrix.row_labels
    n = len(labels)
    if n < 2:
        raise TooFewSubjects(n)
    base = {}
    for i, a in enumerate(labels):
        for j, b in enumerate(labels):
            if i < j:
                d = 1.0 - (matrix.cells[i][j] + matrix.cells[j][i]) / 200.0
                base[(i, j)] = d

    def base_dist(i: int, j: int) -> float:
        return base[(i, j) if i < j else (j, i)]

    # cluster: (canonical name tuple, member leaf indices, node id)
    clusters: list[tuple[tuple[str, ...], list[int], int]] = [
        ((labels[i],), [i], i) for i in range(n)
    ]
    children: dict[int, tuple[int, int]] = {}
    names: dict[int, tuple[str, ...]] = {i: (labels[i],) for i in range(n)}
    sizes: dict[int, int] = {i: 1 for i in range(n)}
    merges: list[tuple[int, int, float, int]] = []
    next_id = n
    while len(clusters) > 1:
        best = None
        for x in range(len(clusters)):
            for y in range(x + 1, len(clusters)):
                ca, cb = clusters[x], clusters[y]
                if ca[0] > cb[0]:
                    ca, cb = cb, ca
                d = sum(base_dist(i, j) for i in ca[1] for j in cb[1]) / (len(ca[1]) * len(cb[1]))
                key = (d, ca[0], cb[0])
                if best is None or key < best[0]:
                    best = (key, ca, cb)
        (d, _, _), ca, cb = best
        merged = (tuple(sorted(ca[0] + cb[0])), ca[1] + cb[1], next_id)
        children[next_id] = (ca[2], cb[2])
        names[next_id] = merged[0]
        sizes[next_id] = len(merged[1])
        merges.append((ca[2], cb[2], d, sizes[next_id]))
        clusters = [c for c in clusters if c[2] not in (ca[2], cb[2])] + [merged]
        next_id += 1

    def walk(node: int, out: list[str]) -> None:
        if node < n:
            out.append(labels[node])
            return
        left, right = children[node]
        first, second = (left, right)
        if (sizes[right], names[right]) < (sizes[left], names[left]):
            first, second = right, left
        walk(first, out)
        walk(second, out)

    order: list[str] = []
    walk(next_id - 1, order)
    return Dendrogram(labels=labels, merges=tuple(merges), leaf_order=tuple(order))
