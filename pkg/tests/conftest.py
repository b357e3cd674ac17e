from __future__ import annotations

import pytest

from curralign import (
    PipelineConfig,
    export_dashboard_bundle,
    load_run,
    publish_run,
    run_pipeline,
)
from curralign.synthetic import labeled_pairs_csv, planted_corpus
from curralign.validation import parse_labeled_pairs


@pytest.fixture(scope="session")
def small_corpus():
    return planted_corpus(n_templates=6, n_cross=2, n_subjects=6, seed=3)


@pytest.fixture(scope="session")
def small_outputs(small_corpus):
    labels = parse_labeled_pairs(
        labeled_pairs_csv(small_corpus, n_pairs=24, seed=5).splitlines())
    config = PipelineConfig(
        dim=64, k=6,
        programs={"stem": {"BIO": (1, 12), "CHM": (3, 9)},
                  "core": {"ISL": (1, 12), "BUS": (1, 12)}})
    return run_pipeline(small_corpus.catalog, config, labels)


@pytest.fixture(scope="session")
def published(small_outputs, tmp_path_factory):
    """One published run + loaded snapshot + exported bundle, shared
    read-only across the service and runstore tests."""
    workdir = tmp_path_factory.mktemp("runs")
    manifest = publish_run(workdir, small_outputs)
    snapshot = load_run(workdir / manifest.run_id)
    bundle_dir = tmp_path_factory.mktemp("bundle")
    files = export_dashboard_bundle(snapshot, bundle_dir)
    return {
        "workdir": workdir,
        "manifest": manifest,
        "snapshot": snapshot,
        "bundle_dir": bundle_dir,
        "bundle_files": files,
        "outputs": small_outputs,
    }
