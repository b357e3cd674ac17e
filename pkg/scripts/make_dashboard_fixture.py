"""Export the 2-subject asymmetry fixture as a static dashboard bundle.

The bundle is what the frontend tests run against: subject AAA matches BBB
at 50.00 while BBB matches AAA at 33.33, and the AAA/BBB drill-down lists
exactly two LO pairs under the shared topic.

Usage:
    python3 scripts/make_dashboard_fixture.py --out frontend/tests/fixtures/bundle
"""

import argparse
import hashlib
from pathlib import Path

from curralign.apidocs import snapshot_data
from curralign.catalog import FrameworkCatalog, catalog_to_csv, parse_framework
from curralign.runstore import compute_run_id, export_dashboard_bundle
from curralign.textprep import default_stopwords, tokenize_catalog
from curralign.topics import TopicAssignment, ctfidf_keywords

import numpy as np

ROWS = [
    # code, text, subject, subject_name, grade, topic
    ("AAA.1.1.01.001", "Compare unit fractions using area models", "AAA", "Applied Arithmetic", 1, 0),
    ("AAA.1.1.01.002", "Order unit fractions on a number line", "AAA", "Applied Arithmetic", 1, 0),
    ("AAA.1.1.02.001", "Measure angles with a protractor", "AAA", "Applied Arithmetic", 2, 1),
    ("AAA.1.1.02.002", "Sketch perpendicular line segments", "AAA", "Applied Arithmetic", 2, -1),
    ("BBB.1.1.01.001", "Compare fractions that share a numerator", "BBB", "Basic Biology", 1, 0),
    ("BBB.1.1.02.001", "Classify leaves by vein structure", "BBB", "Basic Biology", 2, 2),
    ("BBB.1.1.02.002", "Classify stems by branching structure", "BBB", "Basic Biology", 2, 2),
]


def fixture_catalog() -> tuple[FrameworkCatalog, dict[str, int]]:
    header = "code,text,subject,subject_name,grade\n"
    body = "".join(f"{code},{text},{subj},{name},{grade}\n"
                   for code, text, subj, name, grade, _ in ROWS)
    catalog = parse_framework((header + body).splitlines())
    topic_of = {code: topic for code, _, _, _, _, topic in ROWS}
    return catalog, topic_of


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", required=True, help="bundle destination directory")
    args = ap.parse_args(argv)

    catalog, topic_of = fixture_catalog()
    docs = tokenize_catalog(catalog, default_stopwords("en"))
    assignment = TopicAssignment(topic_of=topic_of, k=3,
                                 centroids=np.zeros((3, 1)), inertia=0.0, seed=0)
    keywords = ctfidf_keywords(assignment, docs)

    config = {
        "fixture": "asymmetry-v1",
        "programs": {"demo": {"AAA": [1, 12], "BBB": [1, 12]}},
    }
    run_id = compute_run_id(config, {
        "catalog": hashlib.sha256(catalog_to_csv(catalog).encode()).hexdigest(),
        "labels": None,
    })
    snap = snapshot_data(run_id, config, catalog, topic_of, keywords)

    out = Path(args.out)
    files = export_dashboard_bundle(snap, out)
    print(f"wrote {len(files)} documents under {out} (run {run_id})")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
