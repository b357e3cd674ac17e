"""Agreement of detected matches with the framework hierarchy and expert labels.

Framework consistency operationalizes "accuracy" as LO-level recall of
standard (or strand) cohesion: an LO counts as consistent when at least one
of its matches shares its standard_key (or its subject-scoped strand label).
LOs whose group has fewer than two members are excluded from the
denominator, so trivially unmatched LOs cannot inflate the metric.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from typing import Iterable, Mapping, TextIO

from .alignment import MatchSet
from .catalog import FrameworkCatalog
from .errors import (
    BadLabel,
    DuplicatePair,
    EmptyLabelSet,
    MissingStrandLabels,
    UnknownCode,
)
from .topics import OUTLIER_TOPIC

CONSISTENCY_DEFINITION = (
    "accuracy = n_consistent / n_eligible, where an LO is eligible when its "
    "group (standard or subject-scoped strand) has >= 2 members and "
    "consistent when >= 1 of its same-topic matches shares that group"
)


class ConsistencyLevel(enum.Enum):
    STANDARD = "Standard"
    STRAND = "Strand"


@dataclass(frozen=True)
class SubjectBreakdown:
    n_eligible: int
    n_consistent: int

    @property
    def accuracy(self) -> float:
        return self.n_consistent / self.n_eligible if self.n_eligible else 0.0


@dataclass(frozen=True)
class ConsistencyReport:
    level: ConsistencyLevel
    n_eligible: int
    n_consistent: int
    per_subject: Mapping[str, SubjectBreakdown]
    definition: str = CONSISTENCY_DEFINITION

    @property
    def accuracy(self) -> float:
        return self.n_consistent / self.n_eligible if self.n_eligible else 0.0


def _group_key(lo, level: ConsistencyLevel):
    if level is ConsistencyLevel.STANDARD:
        return lo.standard_key
    return (lo.subject, lo.strand_label)


def framework_consistency(matchset: MatchSet, catalog: FrameworkCatalog,
                          level: ConsistencyLevel) -> ConsistencyReport:
    if level is ConsistencyLevel.STRAND:
        if any(not lo.strand_label for lo in catalog.los):
            raise MissingStrandLabels()
    group_sizes: dict = {}
    for lo in catalog.los:
        key = _group_key(lo, level)
        group_sizes[key] = group_sizes.get(key, 0) + 1
    # group key -> subject -> topic -> member count, for O(1) cohesion checks
    group_topics: dict = {}
    for lo in catalog.los:
        t = matchset.topic_of[lo.code]
        if t == OUTLIER_TOPIC:
            continue
        key = _group_key(lo, level)
        by_topic = group_topics.setdefault(key, {})
        by_topic[t] = by_topic.get(t, 0) + 1
    n_eligible = 0
    n_consistent = 0
    per_subject: dict[str, list[int]] = {}
    for lo in catalog.los:
        key = _group_key(lo, level)
        if group_sizes[key] < 2:
            continue
        n_eligible += 1
        bucket = per_subject.setdefault(lo.subject, [0, 0])
        bucket[0] += 1
        t = matchset.topic_of[lo.code]
        # consistent: another LO of the same group shares this non-outlier topic
        if t != OUTLIER_TOPIC and group_topics.get(key, {}).get(t, 0) >= 2:
            n_consistent += 1
            bucket[1] += 1
    return ConsistencyReport(
        level=level,
        n_eligible=n_eligible,
        n_consistent=n_consistent,
        per_subject={s: SubjectBreakdown(e, c) for s, (e, c) in sorted(per_subject.items())},
    )


@dataclass(frozen=True)
class LabeledPair:
    code_a: str
    code_b: str
    related: bool
    rater_tag: str = ""


@dataclass(frozen=True)
class LabeledPairSet:
    pairs: tuple[LabeledPair, ...]


def parse_labeled_pairs(source: TextIO | Iterable[str]) -> LabeledPairSet:
    """CSV columns: code_a,code_b,label(,rater); label in {related, unrelated}."""
    reader = csv.reader(source)
    header = next(reader, None)
    if header is None:
        return LabeledPairSet(pairs=())
    pairs = []
    seen = set()
    for rownum, row in enumerate(reader, start=2):
        if not row or all(c == "" for c in row):
            continue
        if len(row) < 3:
            raise BadLabel(rownum, ",".join(row))
        code_a, code_b, label = row[0].strip(), row[1].strip(), row[2].strip().lower()
        if label not in ("related", "unrelated"):
            raise BadLabel(rownum, label)
        key = (code_a, code_b) if code_a <= code_b else (code_b, code_a)
        if key in seen:
            raise DuplicatePair(code_a, code_b)
        seen.add(key)
        rater = row[3].strip() if len(row) > 3 else ""
        pairs.append(LabeledPair(code_a, code_b, label == "related", rater))
    return LabeledPairSet(pairs=tuple(pairs))


def labels_to_csv(labels: LabeledPairSet) -> str:
    """Canonical serialization; parse_labeled_pairs inverts it."""
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["code_a", "code_b", "label", "rater"])
    for p in labels.pairs:
        w.writerow([p.code_a, p.code_b,
                    "related" if p.related else "unrelated", p.rater_tag])
    return buf.getvalue()


@dataclass(frozen=True)
class PairEvalReport:
    n_pairs: int
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def n_correct(self) -> int:
        return self.tp + self.tn

    @property
    def accuracy(self) -> float:
        return self.n_correct / self.n_pairs if self.n_pairs else 0.0


def expert_eval(matchset: MatchSet, labels: LabeledPairSet) -> PairEvalReport:
    """Score same-topic prediction against expert related/unrelated labels."""
    if not labels.pairs:
        raise EmptyLabelSet()
    tp = fp = tn = fn = 0
    for pair in labels.pairs:
        for code in (pair.code_a, pair.code_b):
            if code not in matchset.topic_of:
                raise UnknownCode(code)
        ta = matchset.topic_of[pair.code_a]
        tb = matchset.topic_of[pair.code_b]
        predicted = ta != OUTLIER_TOPIC and tb != OUTLIER_TOPIC and ta == tb
        if predicted and pair.related:
            tp += 1
        elif predicted and not pair.related:
            fp += 1
        elif not predicted and pair.related:
            fn += 1
        else:
            tn += 1
    return PairEvalReport(n_pairs=len(labels.pairs), tp=tp, fp=fp, tn=tn, fn=fn)
