"""Curriculum catalog: LO codes, hierarchy metadata, and counting primitives.

The catalog is the ground truth every other stage reads from. LO codes are
dotted strings like ``CCI.1.2.02.003``: a subject prefix followed by numeric
segments, where everything except the final serial identifies the standard
the outcome belongs to. Standard identity is defined purely by that code
prefix; free-text labels ride along as display metadata.
"""

from __future__ import annotations

import csv
import enum
import io
import re
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional, Sequence, TextIO

from .errors import (
    BadGrade,
    DuplicateCode,
    EmptyText,
    MalformedCode,
    MissingColumn,
)

_CODE_RE = re.compile(r"^([A-Za-z]+)((?:\.[0-9]+){2,})$")

# Canonical CSV column names; a schema mapping may rename any of them.
REQUIRED_COLUMNS = ("code", "text", "subject", "grade")
OPTIONAL_COLUMNS = (
    "subject_name",
    "subject_type",
    "stream",
    "cycle",
    "domain",
    "strand",
    "standard",
)
ALL_COLUMNS = REQUIRED_COLUMNS + OPTIONAL_COLUMNS


class SubjectType(enum.Enum):
    GROUP_A = "GroupA"
    GROUP_B = "GroupB"
    APPLIED = "Applied"
    UNSPECIFIED = ""


class Stream(enum.Enum):
    MAIN = "Main"
    ELITE = "Elite"
    ADVANCED = "Advanced"
    GENERAL = "General"
    APPLIED = "Applied"
    ACADEMIC = "Academic"
    UNSPECIFIED = ""


@dataclass(frozen=True)
class LoCodeParts:
    subject: str
    segments: tuple[int, ...]
    standard_key: str
    serial: int


@dataclass(frozen=True)
class LearningOutcome:
    code: str
    text: str
    subject: str
    subject_name: str = ""
    subject_type: SubjectType = SubjectType.UNSPECIFIED
    grade: int = 1
    stream: Stream = Stream.UNSPECIFIED
    cycle: Optional[int] = None  # 1..3, None = unspecified
    domain_label: str = ""
    strand_label: str = ""
    standard_label: str = ""
    standard_key: str = ""


@dataclass(frozen=True)
class CatalogStats:
    n_los: int
    n_subjects: int
    n_standards: int
    ordered_pair_count: int
    per_subject_counts: Mapping[str, int]


class FrameworkCatalog:
    """Immutable, index-backed collection of learning outcomes."""

    def __init__(self, los: Sequence[LearningOutcome]):
        self.los: tuple[LearningOutcome, ...] = tuple(los)
        self.by_code: dict[str, LearningOutcome] = {}
        self.by_subject: dict[str, list[LearningOutcome]] = {}
        self.by_subject_grade: dict[tuple[str, int], list[LearningOutcome]] = {}
        self.by_standard: dict[str, list[LearningOutcome]] = {}
        for lo in self.los:
            if lo.code in self.by_code:
                raise DuplicateCode(lo.code, -1)
            self.by_code[lo.code] = lo
            self.by_subject.setdefault(lo.subject, []).append(lo)
            self.by_subject_grade.setdefault((lo.subject, lo.grade), []).append(lo)
            self.by_standard.setdefault(lo.standard_key, []).append(lo)
        self.subjects: frozenset[str] = frozenset(self.by_subject)

    def __len__(self) -> int:
        return len(self.los)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FrameworkCatalog) and self.los == other.los

    def grades(self) -> list[int]:
        return sorted({lo.grade for lo in self.los})

    def cycles(self) -> list[int]:
        return sorted({lo.cycle for lo in self.los if lo.cycle is not None})

    def streams(self) -> list[Stream]:
        return sorted({lo.stream for lo in self.los}, key=lambda s: s.value)


def parse_lo_code(code: str) -> LoCodeParts:
    """Split a dotted LO code into subject, numeric segments, and standard key.

    Two codes share a standard exactly when they agree on every segment
    except the last; the zero-padded spelling of the retained segments is
    preserved so keys stay bit-stable.
    """
    m = _CODE_RE.match(code)
    if m is None:
        raise MalformedCode(code)
    subject = m.group(1)
    seg_strs = m.group(2).split(".")[1:]
    segments = tuple(int(s) for s in seg_strs)
    standard_key = code.rsplit(".", 1)[0]
    return LoCodeParts(subject=subject, segments=segments,
                       standard_key=standard_key, serial=segments[-1])


def _parse_subject_type(raw: str) -> SubjectType:
    s = raw.strip().replace(" ", "").lower()
    for st in SubjectType:
        if st.value.lower() == s:
            return st
    return SubjectType.UNSPECIFIED


def _parse_stream(raw: str) -> Stream:
    s = raw.strip().lower()
    for st in Stream:
        if st.value.lower() == s and st is not Stream.UNSPECIFIED:
            return st
    return Stream.UNSPECIFIED


def _parse_cycle(raw: str) -> Optional[int]:
    s = raw.strip()
    if not s:
        return None
    try:
        c = int(s)
    except ValueError:
        return None
    return c if 1 <= c <= 3 else None


def parse_framework(
    source: TextIO | Iterable[str],
    schema: Optional[Mapping[str, str]] = None,
) -> FrameworkCatalog:
    """Parse a UTF-8 CSV stream (header row required) into a catalog.

    ``schema`` maps canonical column names to the names actually present in
    the file; unmapped columns keep their canonical names. Missing optional
    columns default to unspecified/empty. Row numbers in errors count the
    header as line 1.
    """
    schema = dict(schema or {})
    col_of = {canon: schema.get(canon, canon) for canon in ALL_COLUMNS}

    reader = csv.reader(source)
    try:
        header = next(reader)
    except StopIteration:
        raise MissingColumn(col_of["code"]) from None
    index_of: dict[str, int] = {}
    positions = {name: i for i, name in enumerate(header)}
    for canon in REQUIRED_COLUMNS:
        if col_of[canon] not in positions:
            raise MissingColumn(col_of[canon])
        index_of[canon] = positions[col_of[canon]]
    for canon in OPTIONAL_COLUMNS:
        if col_of[canon] in positions:
            index_of[canon] = positions[col_of[canon]]

    def cell(row: list[str], canon: str) -> str:
        i = index_of.get(canon)
        if i is None or i >= len(row):
            return ""
        return row[i]

    los: list[LearningOutcome] = []
    seen: set[str] = set()
    for rownum, row in enumerate(reader, start=2):
        if not row or all(c == "" for c in row):
            continue
        code = cell(row, "code").strip()
        parts = parse_lo_code(code)
        if code in seen:
            raise DuplicateCode(code, rownum)
        seen.add(code)
        text = cell(row, "text")
        if not text.strip():
            raise EmptyText(rownum)
        grade_raw = cell(row, "grade").strip()
        try:
            grade = int(grade_raw)
        except ValueError:
            raise BadGrade(rownum, grade_raw) from None
        if not 1 <= grade <= 12:
            raise BadGrade(rownum, grade_raw)
        los.append(LearningOutcome(
            code=code,
            text=text,
            subject=cell(row, "subject").strip() or parts.subject,
            subject_name=cell(row, "subject_name").strip(),
            subject_type=_parse_subject_type(cell(row, "subject_type")),
            grade=grade,
            stream=_parse_stream(cell(row, "stream")),
            cycle=_parse_cycle(cell(row, "cycle")),
            domain_label=cell(row, "domain").strip(),
            strand_label=cell(row, "strand").strip(),
            standard_label=cell(row, "standard").strip(),
            standard_key=parts.standard_key,
        ))
    return FrameworkCatalog(los)


def write_catalog(catalog: FrameworkCatalog, out: TextIO) -> None:
    """Serialize a catalog to canonical CSV; re-parsing yields an equal catalog."""
    w = csv.writer(out, lineterminator="\n")
    w.writerow(ALL_COLUMNS)
    for lo in catalog.los:
        w.writerow([
            lo.code,
            lo.text,
            lo.subject,
            lo.grade,
            lo.subject_name,
            lo.subject_type.value,
            lo.stream.value,
            "" if lo.cycle is None else lo.cycle,
            lo.domain_label,
            lo.strand_label,
            lo.standard_label,
        ])


def catalog_to_csv(catalog: FrameworkCatalog) -> str:
    buf = io.StringIO()
    write_catalog(catalog, buf)
    return buf.getvalue()


def catalog_stats(catalog: FrameworkCatalog) -> CatalogStats:
    """Counting summary; ordered_pair_count is exactly n*(n-1)."""
    n = len(catalog.los)
    return CatalogStats(
        n_los=n,
        n_subjects=len(catalog.subjects),
        n_standards=len(catalog.by_standard),
        ordered_pair_count=n * (n - 1),
        per_subject_counts={s: len(v) for s, v in sorted(catalog.by_subject.items())},
    )
