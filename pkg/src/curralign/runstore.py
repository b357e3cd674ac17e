"""Immutable, checksummed run directories.

A run is content-addressed: run_id = sha256 of the canonical config plus
the checksums of its inputs, truncated to 16 hex chars. Publication stages
everything in a temp directory and renames it into place, so a reader
either sees a complete run or nothing. Nothing under a published run dir
is ever rewritten.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import shutil
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Mapping, Optional

from . import apidocs
from .apidocs import SnapshotData, doc_bytes, snapshot_data
from .catalog import FrameworkCatalog, catalog_to_csv, parse_framework
from .errors import (
    ChecksumMismatch,
    CoverageGap,
    EmptyRun,
    IoFailure,
    PartialRun,
    SchemaVersionUnsupported,
    UnknownCode,
)
from .pipeline import PipelineOutputs
from .topics import TopicKeywords
from .validation import ConsistencyReport, PairEvalReport, labels_to_csv

SCHEMA_VERSION = 1
MANIFEST_NAME = "manifest.json"


@dataclass(frozen=True)
class ArtifactInfo:
    path: str  # relative to the run dir, "/" separated
    n_bytes: int
    sha256: str


@dataclass(frozen=True)
class RunManifest:
    schema_version: int
    run_id: str
    created_at: str
    config: Mapping[str, Any]
    input_checksums: Mapping[str, Optional[str]]
    artifacts: tuple[ArtifactInfo, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "schema_version": self.schema_version,
            "run_id": self.run_id,
            "created_at": self.created_at,
            "config": dict(self.config),
            "input_checksums": dict(self.input_checksums),
            "artifacts": [{"path": a.path, "bytes": a.n_bytes, "sha256": a.sha256}
                          for a in self.artifacts],
        }


def manifest_from_dict(raw: Mapping[str, Any]) -> RunManifest:
    version = int(raw.get("schema_version", -1))
    if version != SCHEMA_VERSION:
        raise SchemaVersionUnsupported(version, SCHEMA_VERSION)
    return RunManifest(
        schema_version=version,
        run_id=raw["run_id"],
        created_at=raw.get("created_at", ""),
        config=dict(raw.get("config", {})),
        input_checksums=dict(raw.get("input_checksums", {})),
        artifacts=tuple(ArtifactInfo(a["path"], int(a["bytes"]), a["sha256"])
                        for a in raw.get("artifacts", [])),
    )


def _sha256(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def compute_run_id(config: Mapping[str, Any],
                   input_checksums: Mapping[str, Optional[str]]) -> str:
    blob = json.dumps({"config": dict(config), "inputs": dict(input_checksums)},
                      sort_keys=True, separators=(",", ":")).encode("utf-8")
    return _sha256(blob)[:16]


# --- artifact serialization ---------------------------------------------------

def topics_to_csv(catalog: FrameworkCatalog, topic_of: Mapping[str, int]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["lo_code", "topic_id"])
    for lo in catalog.los:
        w.writerow([lo.code, topic_of[lo.code]])
    return buf.getvalue()


def parse_topics_csv(text: str) -> dict[str, int]:
    reader = csv.reader(io.StringIO(text))
    next(reader, None)
    return {row[0]: int(row[1]) for row in reader if row}


def keywords_to_csv(keywords: TopicKeywords) -> str:
    # scores as repr() so parsing returns the identical float
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["topic_id", "rank", "term", "score"])
    for topic in sorted(keywords.per_topic):
        for rank, (term, score) in enumerate(keywords.per_topic[topic], start=1):
            w.writerow([topic, rank, term, repr(float(score))])
    return buf.getvalue()


def parse_keywords_csv(text: str) -> TopicKeywords:
    reader = csv.reader(io.StringIO(text))
    next(reader, None)
    per_topic: dict[int, list[tuple[str, float]]] = {}
    for row in reader:
        if not row:
            continue
        per_topic.setdefault(int(row[0]), []).append((row[2], float(row[3])))
    return TopicKeywords(per_topic={t: tuple(v) for t, v in per_topic.items()})


def consistency_doc(report: ConsistencyReport) -> dict[str, Any]:
    return {
        "level": report.level.value,
        "definition": report.definition,
        "n_eligible": report.n_eligible,
        "n_consistent": report.n_consistent,
        "accuracy": report.accuracy,
        "per_subject": {
            s: {"n_eligible": b.n_eligible, "n_consistent": b.n_consistent,
                "accuracy": b.accuracy}
            for s, b in report.per_subject.items()
        },
    }


def expert_doc(report: PairEvalReport) -> dict[str, Any]:
    return {
        "n_pairs": report.n_pairs,
        "tp": report.tp, "fp": report.fp, "tn": report.tn, "fn": report.fn,
        "n_correct": report.n_correct,
        "accuracy": report.accuracy,
    }


# --- publish ------------------------------------------------------------------

def _stage_artifacts(outputs: PipelineOutputs, snap: SnapshotData,
                     tmp: Path) -> list[ArtifactInfo]:
    from .embed import save_embeddings

    files: list[tuple[str, bytes]] = []
    files.append(("catalog.csv", catalog_to_csv(outputs.catalog).encode("utf-8")))
    files.append(("topics.csv",
                  topics_to_csv(outputs.catalog, outputs.assignment.topic_of).encode("utf-8")))
    files.append(("keywords.csv", keywords_to_csv(outputs.keywords).encode("utf-8")))
    files.append(("matrix_subjects.csv", outputs.matrix.to_csv().encode("utf-8")))
    files.append(("distributions.csv", outputs.distribution.to_csv().encode("utf-8")))

    files.append(("reports/consistency_standard.json",
                  doc_bytes(consistency_doc(outputs.consistency_standard))))
    if outputs.consistency_strand is not None:
        files.append(("reports/consistency_strand.json",
                      doc_bytes(consistency_doc(outputs.consistency_strand))))
    if outputs.expert is not None:
        files.append(("reports/expert_eval.json", doc_bytes(expert_doc(outputs.expert))))
    files.append(("reports/cross_subject_topics.json", doc_bytes({
        "min_subjects": 4,
        "topics": [{
            "topic_id": t,
            "n_subjects": outputs.distribution.subject_support(t),
            "n_los": outputs.distribution.topic_total(t),
            "keywords": outputs.distribution.labels.get(t, ""),
        } for t in outputs.cross_topics],
    })))
    files.append(("reports/spirality.json", doc_bytes({
        subject: [{"topic_id": e.topic_id, "grades": list(e.grades),
                   "gaps": list(e.gaps)} for e in entries]
        for subject, entries in outputs.spirality.items()
    })))

    for rel, doc in apidocs.enumerate_bundle(snap):
        files.append((f"api_bundle/{rel}", doc_bytes(doc)))

    infos = []
    for rel, data in files:
        dest = tmp / Path(*rel.split("/"))
        dest.parent.mkdir(parents=True, exist_ok=True)
        dest.write_bytes(data)
        infos.append(ArtifactInfo(rel, len(data), _sha256(data)))

    # embeddings carry their own integrity header; written via the cache codec
    emb_path = tmp / "embeddings.bin"
    save_embeddings(outputs.embeddings, emb_path)
    emb_bytes = emb_path.read_bytes()
    infos.append(ArtifactInfo("embeddings.bin", len(emb_bytes), _sha256(emb_bytes)))
    infos.sort(key=lambda a: a.path)
    return infos


def publish_run(workdir: str | Path, outputs: PipelineOutputs) -> RunManifest:
    for stage, value in (("ingest", outputs.catalog),
                         ("embed", outputs.embeddings),
                         ("fit", outputs.assignment),
                         ("fit", outputs.keywords),
                         ("analyze", outputs.matrix),
                         ("analyze", outputs.distribution),
                         ("validate", outputs.consistency_standard)):
        if value is None:
            raise PartialRun(stage)

    config = outputs.config.to_dict()
    checksums: dict[str, Optional[str]] = {
        "catalog": _sha256(catalog_to_csv(outputs.catalog).encode("utf-8")),
        "labels": (_sha256(labels_to_csv(outputs.labels).encode("utf-8"))
                   if outputs.labels is not None else None),
    }
    run_id = compute_run_id(config, checksums)

    workdir = Path(workdir)
    final = workdir / run_id
    if final.exists():
        if (final / MANIFEST_NAME).exists():
            return manifest_from_dict(json.loads((final / MANIFEST_NAME).read_text("utf-8")))
        raise IoFailure(f"run dir {final} exists without a manifest")

    snap = snapshot_data(run_id, config, outputs.catalog,
                         outputs.assignment.topic_of, outputs.keywords)
    tmp = workdir / f".tmp.{run_id}.{os.getpid()}"
    try:
        if tmp.exists():
            shutil.rmtree(tmp)
        tmp.mkdir(parents=True)
        artifacts = _stage_artifacts(outputs, snap, tmp)
        manifest = RunManifest(
            schema_version=SCHEMA_VERSION,
            run_id=run_id,
            created_at=datetime.now(timezone.utc).isoformat(timespec="seconds"),
            config=config,
            input_checksums=checksums,
            artifacts=tuple(artifacts),
        )
        (tmp / MANIFEST_NAME).write_bytes(doc_bytes(manifest.to_dict()))
        os.rename(tmp, final)
    except OSError as e:
        if final.exists() and (final / MANIFEST_NAME).exists():
            shutil.rmtree(tmp, ignore_errors=True)  # lost a publish race; keep theirs
            return manifest_from_dict(json.loads((final / MANIFEST_NAME).read_text("utf-8")))
        shutil.rmtree(tmp, ignore_errors=True)
        raise IoFailure(str(e)) from e
    return manifest


# --- load ---------------------------------------------------------------------

@dataclass(frozen=True)
class RunSnapshot:
    """Read-only view of one published run."""
    run_dir: Path
    manifest: RunManifest
    data: SnapshotData
    reports: Mapping[str, Any]  # report name -> parsed JSON document

    @property
    def run_id(self) -> str:
        return self.manifest.run_id


def load_run(manifest_path: str | Path) -> RunSnapshot:
    path = Path(manifest_path)
    run_dir = path.parent if path.name == MANIFEST_NAME else path
    mf_file = run_dir / MANIFEST_NAME
    if not mf_file.is_file():
        raise IoFailure(f"no {MANIFEST_NAME} under {run_dir}")
    manifest = manifest_from_dict(json.loads(mf_file.read_text("utf-8")))

    blobs: dict[str, bytes] = {}
    for art in manifest.artifacts:
        file = run_dir / Path(*art.path.split("/"))
        if not file.is_file():
            raise IoFailure(f"missing artifact {art.path}")
        data = file.read_bytes()
        if _sha256(data) != art.sha256:
            raise ChecksumMismatch(art.path)
        blobs[art.path] = data

    catalog = parse_framework(io.StringIO(blobs["catalog.csv"].decode("utf-8")))
    topic_of = parse_topics_csv(blobs["topics.csv"].decode("utf-8"))
    for code in topic_of:
        if code not in catalog.by_code:
            raise UnknownCode(code)
    for lo in catalog.los:
        if lo.code not in topic_of:
            raise CoverageGap(lo.code)
    keywords = parse_keywords_csv(blobs["keywords.csv"].decode("utf-8"))

    reports = {}
    for art in manifest.artifacts:
        if art.path.startswith("reports/") and art.path.endswith(".json"):
            name = art.path[len("reports/"):-len(".json")]
            reports[name] = json.loads(blobs[art.path].decode("utf-8"))

    data = snapshot_data(manifest.run_id, manifest.config, catalog, topic_of, keywords)
    return RunSnapshot(run_dir=run_dir, manifest=manifest, data=data, reports=reports)


def list_runs(workdir: str | Path) -> list[str]:
    root = Path(workdir)
    if not root.is_dir():
        return []
    return sorted(p.name for p in root.iterdir()
                  if p.is_dir() and (p / MANIFEST_NAME).is_file())


def export_dashboard_bundle(snapshot: RunSnapshot | SnapshotData,
                            path: str | Path) -> list[str]:
    """Write the static JSON tree the HTTP API would serve; returns the
    relative paths written (sorted). Re-export is byte-identical."""
    snap = snapshot.data if isinstance(snapshot, RunSnapshot) else snapshot
    if len(snap.catalog) == 0:
        raise EmptyRun()
    root = Path(path)
    written = []
    try:
        for rel, doc in apidocs.enumerate_bundle(snap):
            dest = root / Path(*rel.split("/"))
            dest.parent.mkdir(parents=True, exist_ok=True)
            dest.write_bytes(doc_bytes(doc))
            written.append(rel)
    except OSError as e:
        raise IoFailure(str(e)) from e
    return sorted(written)
