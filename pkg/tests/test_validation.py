import io
import random

import pytest

from curralign.alignment import MatchSet
from curralign.catalog import FrameworkCatalog
from curralign.errors import (
    BadLabel,
    DuplicatePair,
    EmptyLabelSet,
    MissingStrandLabels,
    UnknownCode,
)
from curralign.validation import (
    ConsistencyLevel,
    LabeledPair,
    LabeledPairSet,
    expert_eval,
    framework_consistency,
    labels_to_csv,
    parse_labeled_pairs,
)

from helpers import (
    OUTLIER,
    asymmetry_fixture,
    make_lo,
    oracle_consistency,
    random_catalog_and_topics,
)


# --- framework consistency ------------------------------------------------------

def _cohesion_fixture():
    # standard AAA.1.1.01 has 3 LOs: two share topic 0, one strays to topic 1;
    # standard AAA.1.1.02 is a singleton and must not enter the denominator
    los = [
        make_lo("AAA.1.1.01.001", strand="S1"),
        make_lo("AAA.1.1.01.002", strand="S1"),
        make_lo("AAA.1.1.01.003", strand="S1"),
        make_lo("AAA.1.1.02.001", strand="S1", grade=2),
    ]
    topic_of = {
        "AAA.1.1.01.001": 0,
        "AAA.1.1.01.002": 0,
        "AAA.1.1.01.003": 1,
        "AAA.1.1.02.001": 1,
    }
    return FrameworkCatalog(los), topic_of


def test_consistency_standard_level_counts():
    catalog, topic_of = _cohesion_fixture()
    report = framework_consistency(MatchSet(topic_of, catalog), catalog,
                                   ConsistencyLevel.STANDARD)
    assert report.n_eligible == 3
    assert report.n_consistent == 2
    assert report.accuracy == pytest.approx(2 / 3)
    assert report.per_subject["AAA"].n_eligible == 3
    assert report.per_subject["AAA"].n_consistent == 2


def test_consistency_strand_level_widens_group():
    # at strand level all four LOs share one group, so the two topic-1 LOs
    # (001.003 and 002.001) now find each other
    catalog, topic_of = _cohesion_fixture()
    report = framework_consistency(MatchSet(topic_of, catalog), catalog,
                                   ConsistencyLevel.STRAND)
    assert report.n_eligible == 4
    assert report.n_consistent == 4


def test_consistency_strand_is_subject_scoped():
    # same strand label in two subjects must not form one group
    los = [
        make_lo("AAA.1.1.01.001", strand="Shared"),
        make_lo("BBB.1.1.01.001", strand="Shared"),
    ]
    catalog = FrameworkCatalog(los)
    topic_of = {lo.code: 0 for lo in los}
    report = framework_consistency(MatchSet(topic_of, catalog), catalog,
                                   ConsistencyLevel.STRAND)
    assert report.n_eligible == 0
    assert report.accuracy == 0.0


def test_consistency_outlier_is_never_consistent():
    los = [
        make_lo("AAA.1.1.01.001"),
        make_lo("AAA.1.1.01.002"),
    ]
    catalog = FrameworkCatalog(los)
    report = framework_consistency(
        MatchSet({"AAA.1.1.01.001": OUTLIER, "AAA.1.1.01.002": OUTLIER}, catalog),
        catalog, ConsistencyLevel.STANDARD)
    assert report.n_eligible == 2
    assert report.n_consistent == 0


def test_consistency_requires_strand_labels():
    catalog, topic_of = asymmetry_fixture()  # built without strand labels
    with pytest.raises(MissingStrandLabels):
        framework_consistency(MatchSet(topic_of, catalog), catalog,
                              ConsistencyLevel.STRAND)


def test_consistency_matches_oracle_randomized():
    rng = random.Random(31)
    for _ in range(25):
        catalog, topic_of = random_catalog_and_topics(rng, max_n=80)
        ms = MatchSet(topic_of, catalog)
        for level, strand in ((ConsistencyLevel.STANDARD, False),
                              (ConsistencyLevel.STRAND, True)):
            report = framework_consistency(ms, catalog, level)
            n_eligible, n_consistent, per_subject = oracle_consistency(
                catalog, topic_of, strand_level=strand)
            assert report.n_eligible == n_eligible
            assert report.n_consistent == n_consistent
            assert set(report.per_subject) == set(per_subject)
            for subject, (e, c) in per_subject.items():
                assert report.per_subject[subject].n_eligible == e
                assert report.per_subject[subject].n_consistent == c


# --- labeled pairs ----------------------------------------------------------------

def test_parse_labeled_pairs_happy_path():
    src = io.StringIO(
        "code_a,code_b,label,rater\n"
        "AAA.1.1.01.001,BBB.1.1.01.001,related,r1\n"
        "AAA.1.1.01.002,BBB.1.1.02.001,unrelated\n"
    )
    labels = parse_labeled_pairs(src)
    assert labels.pairs == (
        LabeledPair("AAA.1.1.01.001", "BBB.1.1.01.001", True, "r1"),
        LabeledPair("AAA.1.1.01.002", "BBB.1.1.02.001", False, ""),
    )


def test_parse_labeled_pairs_bad_label():
    src = io.StringIO("code_a,code_b,label\na,b,maybe\n")
    with pytest.raises(BadLabel) as err:
        parse_labeled_pairs(src)
    assert "row 2" in str(err.value)


def test_parse_labeled_pairs_short_row():
    src = io.StringIO("code_a,code_b,label\na,b\n")
    with pytest.raises(BadLabel):
        parse_labeled_pairs(src)


def test_parse_labeled_pairs_rejects_reversed_duplicate():
    src = io.StringIO(
        "code_a,code_b,label\n"
        "a,b,related\n"
        "b,a,unrelated\n"
    )
    with pytest.raises(DuplicatePair):
        parse_labeled_pairs(src)


def test_parse_labeled_pairs_skips_blank_lines():
    src = io.StringIO("code_a,code_b,label\n\na,b,related\n,,\n")
    labels = parse_labeled_pairs(src)
    assert len(labels.pairs) == 1


def test_labels_csv_round_trip():
    labels = LabeledPairSet(pairs=(
        LabeledPair("AAA.1.1.01.001", "BBB.1.1.01.001", True, "r1"),
        LabeledPair("AAA.1.1.01.002", "BBB.1.1.02.001", False, ""),
    ))
    again = parse_labeled_pairs(io.StringIO(labels_to_csv(labels)))
    assert again.pairs == labels.pairs


# --- expert agreement ----------------------------------------------------------

def test_expert_eval_confusion_counts():
    catalog, topic_of = asymmetry_fixture()
    ms = MatchSet(topic_of, catalog)
    labels = LabeledPairSet(pairs=(
        # same topic, labeled related: TP
        LabeledPair("AAA.1.1.01.001", "BBB.1.1.01.001", True),
        # same topic, labeled unrelated: FP
        LabeledPair("AAA.1.1.01.001", "AAA.1.1.01.002", False),
        # different topics, labeled related: FN
        LabeledPair("AAA.1.1.02.001", "BBB.1.1.02.001", True),
        # outlier on one side, labeled unrelated: TN
        LabeledPair("AAA.1.1.02.002", "BBB.1.1.02.002", False),
    ))
    report = expert_eval(ms, labels)
    assert (report.tp, report.fp, report.fn, report.tn) == (1, 1, 1, 1)
    assert report.n_pairs == 4
    assert report.n_correct == 2
    assert report.accuracy == pytest.approx(0.5)


def test_expert_eval_outlier_pair_never_predicted():
    catalog, topic_of = asymmetry_fixture()
    topic_of = dict(topic_of, **{"AAA.1.1.01.001": OUTLIER, "AAA.1.1.01.002": OUTLIER})
    ms = MatchSet(topic_of, catalog)
    labels = LabeledPairSet(pairs=(
        LabeledPair("AAA.1.1.01.001", "AAA.1.1.01.002", True),
    ))
    report = expert_eval(ms, labels)
    assert (report.tp, report.fn) == (0, 1)


def test_expert_eval_unknown_code():
    catalog, topic_of = asymmetry_fixture()
    ms = MatchSet(topic_of, catalog)
    labels = LabeledPairSet(pairs=(LabeledPair("ZZZ.1.1.01.001", "AAA.1.1.01.001", True),))
    with pytest.raises(UnknownCode):
        expert_eval(ms, labels)


def test_expert_eval_empty_label_set():
    catalog, topic_of = asymmetry_fixture()
    with pytest.raises(EmptyLabelSet):
        expert_eval(MatchSet(topic_of, catalog), LabeledPairSet(pairs=()))
