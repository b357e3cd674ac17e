"""Synthetic curriculum corpora with planted structure.

The production catalog is private, so tests and demos run on generated
corpora where the ground truth is known by construction: each "template"
plants one latent topic with its own vocabulary, LOs inside a template
share most of their tokens, and standards nest inside templates. Cross-
subject templates span many subjects; the rest stay in one or two.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .catalog import FrameworkCatalog, LearningOutcome, Stream, SubjectType

SUBJECT_TABLE: tuple[tuple[str, str, SubjectType], ...] = (
    ("BIO", "Biology", SubjectType.GROUP_A),
    ("BUS", "Business Studies", SubjectType.GROUP_B),
    ("CHM", "Chemistry", SubjectType.GROUP_A),
    ("CCI", "Computing, Creative Design and Innovation", SubjectType.GROUP_B),
    ("HSC", "Health Science", SubjectType.GROUP_B),
    ("ISL", "Islamic Study", SubjectType.GROUP_A),
    ("MAT", "Mathematics", SubjectType.GROUP_A),
    ("MSA", "Music", SubjectType.GROUP_A),
    ("MOR", "Moral Study", SubjectType.GROUP_A),
    ("PHE", "Physical Education", SubjectType.GROUP_B),
    ("PHY", "Physics", SubjectType.GROUP_A),
    ("SCI", "Integrated Science", SubjectType.GROUP_A),
    ("SST", "Social Study", SubjectType.GROUP_A),
    ("TTL", "Applied Travel, Tourism, and Leisure", SubjectType.APPLIED),
    ("VAS", "Visual Art", SubjectType.GROUP_A),
)

_SYLLABLES = ("ba", "do", "ke", "lu", "mi", "na", "po", "ra", "si", "ta",
              "ve", "wo", "zu", "che", "gri", "pla", "ster", "mon", "dal", "fy")

_FILLERS = ("the", "of", "and", "to", "in", "a", "for", "with")

_STREAM_POOL = (Stream.MAIN, Stream.MAIN, Stream.GENERAL, Stream.ADVANCED, Stream.ELITE)


def cycle_of_grade(grade: int) -> int:
    if grade <= 4:
        return 1
    if grade <= 8:
        return 2
    return 3


def _template_vocab(template_id: int, size: int, rng: random.Random) -> list[str]:
    vocab = []
    while len(vocab) < size:
        word = "".join(rng.choice(_SYLLABLES) for _ in range(3)) + str(template_id)
        if word not in vocab:
            vocab.append(word)
    return vocab


@dataclass(frozen=True)
class PlantedCorpus:
    catalog: FrameworkCatalog
    template_of: dict[str, int]  # lo_code -> planted template id
    cross_template_ids: tuple[int, ...]  # templates spanning >= 4 subjects
    subjects_of_template: dict[int, tuple[str, ...]]


def planted_corpus(
    n_templates: int = 30,
    n_cross: int = 6,
    n_subjects: int = 12,
    seed: int = 0,
    grades_per_pair: tuple[int, int] = (2, 4),
    los_per_standard: tuple[int, int] = (2, 3),
    vocab_size: int = 20,
    target_los: Optional[int] = None,
) -> PlantedCorpus:
    """Generate a catalog with n_templates planted topics.

    Any two LOs of one template draw >= 85% of the template vocabulary, so
    every within-template pair shares >= 70% of its tokens. Standards nest
    inside (template, subject, grade) cells. When target_los is given, LOs
    are added template by template until the catalog reaches that size.
    """
    rng = random.Random(seed)
    subjects = SUBJECT_TABLE[:n_subjects]
    los: list[LearningOutcome] = []
    template_of: dict[str, int] = {}
    cross_ids: list[int] = []
    subjects_of: dict[int, tuple[str, ...]] = {}

    lo_budget = target_los if target_los is not None else None
    # keep >= 85% of the vocab so any within-template pair overlaps >= 70%
    keep_min = (vocab_size * 17 + 19) // 20

    for tpl in range(n_templates):
        vocab = _template_vocab(tpl, vocab_size, rng)
        if tpl < n_cross:
            n_subj = rng.randint(4, min(6, len(subjects)))
            cross_ids.append(tpl)
        else:
            n_subj = rng.randint(1, 2)
        chosen = rng.sample(range(len(subjects)), n_subj)
        subjects_of[tpl] = tuple(subjects[i][0] for i in sorted(chosen))
        for si in sorted(chosen):
            abbr, name, stype = subjects[si]
            n_grades = rng.randint(*grades_per_pair)
            grades = sorted(rng.sample(range(1, 13), n_grades))
            for grade in grades:
                n_in_standard = rng.randint(*los_per_standard)
                for serial in range(1, n_in_standard + 1):
                    keep = rng.randint(keep_min, vocab_size)
                    tokens = rng.sample(vocab, keep)
                    fillers = rng.sample(_FILLERS, rng.randint(0, 2))
                    words = tokens + fillers + [str(rng.randint(1, 99))]
                    rng.shuffle(words)
                    text = " ".join(words).capitalize()
                    cycle = cycle_of_grade(grade)
                    code = f"{abbr}.{cycle}.{tpl + 1:02d}.{grade:02d}.{serial:03d}"
                    los.append(LearningOutcome(
                        code=code,
                        text=text,
                        subject=abbr,
                        subject_name=name,
                        subject_type=stype,
                        grade=grade,
                        stream=rng.choice(_STREAM_POOL),
                        cycle=cycle,
                        domain_label=f"Domain {tpl % 4 + 1}",
                        strand_label=f"Strand {tpl + 1:02d}",
                        standard_label=f"Standard {tpl + 1:02d}.{grade:02d}",
                        standard_key=code.rsplit(".", 1)[0],
                    ))
                    template_of[code] = tpl
                    if lo_budget is not None and len(los) >= lo_budget:
                        break
                if lo_budget is not None and len(los) >= lo_budget:
                    break
            if lo_budget is not None and len(los) >= lo_budget:
                break
        if lo_budget is not None and len(los) >= lo_budget:
            break

    catalog = FrameworkCatalog(los)
    produced = set(template_of.values())
    return PlantedCorpus(
        catalog=catalog,
        template_of=template_of,
        cross_template_ids=tuple(t for t in cross_ids if t in produced),
        subjects_of_template=subjects_of,
    )


def corrupted_consistency_fixture(
    n_standards: int = 100,
    los_per_standard: int = 5,
    corrupt_fraction: float = 0.10,
    seed: int = 0,
) -> tuple[FrameworkCatalog, dict[str, int], float]:
    """Catalog where each standard maps to its own topic, then a fraction of
    LOs (at most one per standard) are knocked out to the outlier topic.

    Every LO is eligible (standards all have >= los_per_standard members) and
    exactly the knocked-out LOs are inconsistent, so the expected accuracy is
    1 - corrupt_fraction up to rounding of the corrupted count.
    """
    if los_per_standard < 3:
        raise ValueError("need >= 3 LOs per standard so survivors stay consistent")
    rng = random.Random(seed)
    los: list[LearningOutcome] = []
    topic_of: dict[str, int] = {}
    for std in range(n_standards):
        abbr, name, stype = SUBJECT_TABLE[std % len(SUBJECT_TABLE)]
        grade = std % 12 + 1
        cycle = cycle_of_grade(grade)
        for serial in range(1, los_per_standard + 1):
            code = f"{abbr}.{cycle}.{std:03d}.{grade:02d}.{serial:03d}"
            los.append(LearningOutcome(
                code=code,
                text=f"standard {std} outcome {serial}",
                subject=abbr,
                subject_name=name,
                subject_type=stype,
                grade=grade,
                stream=Stream.MAIN,
                cycle=cycle,
                domain_label=f"Domain {std % 4 + 1}",
                strand_label=f"Strand {std:03d}",
                standard_label=f"Standard {std:03d}",
                standard_key=code.rsplit(".", 1)[0],
            ))
            topic_of[code] = std

    n_total = n_standards * los_per_standard
    n_corrupt = round(n_total * corrupt_fraction)
    if n_corrupt > n_standards:
        raise ValueError("corrupt_fraction too high for one corruption per standard")
    for std in rng.sample(range(n_standards), n_corrupt):
        serial = rng.randint(1, los_per_standard)
        abbr, _, _ = SUBJECT_TABLE[std % len(SUBJECT_TABLE)]
        grade = std % 12 + 1
        code = f"{abbr}.{cycle_of_grade(grade)}.{std:03d}.{grade:02d}.{serial:03d}"
        topic_of[code] = -1
    expected = (n_total - n_corrupt) / n_total
    return FrameworkCatalog(los), topic_of, expected


def labeled_pairs_csv(corpus: PlantedCorpus, n_pairs: int = 40, seed: int = 1,
                      noise: float = 0.0) -> str:
    """Expert-style label file: same-template pairs are related, cross-template
    unrelated; a noise fraction of labels is flipped."""
    rng = random.Random(seed)
    codes = [lo.code for lo in corpus.catalog.los]
    by_template: dict[int, list[str]] = {}
    for code in codes:
        by_template.setdefault(corpus.template_of[code], []).append(code)
    rows = ["code_a,code_b,label,rater"]
    seen = set()
    templates = [t for t, cs in by_template.items() if len(cs) >= 2]
    while len(rows) - 1 < n_pairs:
        if rng.random() < 0.5 and templates:
            tpl = rng.choice(templates)
            a, b = rng.sample(by_template[tpl], 2)
            related = True
        else:
            a, b = rng.sample(codes, 2)
            related = corpus.template_of[a] == corpus.template_of[b]
        key = (a, b) if a <= b else (b, a)
        if key in seen:
            continue
        seen.add(key)
        if noise > 0 and rng.random() < noise:
            related = not related
        rows.append(f"{a},{b},{'related' if related else 'unrelated'},r{rng.randint(1, 8)}")
    return "\n".join(rows) + "\n"
