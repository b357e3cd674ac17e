"""Command-line driver and read-only HTTP API.

The CLI runs the pipeline either stage by stage (ingest/embed/fit/analyze/
validate, staging previews under <out>/work/) or all at once (run), then
publishes immutable run directories. `serve` exposes one published run over
GET-only JSON endpoints under /api/v1; every response body is built by the
same document builders the static bundle uses, so live and exported bytes
agree.

Exit codes: 0 success, 1 usage error, 2 data/pipeline error.
"""

from __future__ import annotations

import argparse
import json
import shutil
import sys
import urllib.parse
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from typing import Any, Optional

from . import apidocs
from .apidocs import MAX_PAGE_SIZE, SnapshotData, doc_bytes
from .catalog import catalog_to_csv, parse_framework
from .embed import load_embeddings, save_embeddings, embed_batch
from .errors import BadProgramFile, CurralignError, PartialRun, UnknownCode
from .pipeline import (
    PipelineConfig,
    config_from_dict,
    fit_topics,
    run_pipeline,
)
from .runstore import (
    RunSnapshot,
    keywords_to_csv,
    load_run,
    parse_keywords_csv,
    parse_topics_csv,
    publish_run,
    topics_to_csv,
)
from .textprep import default_stopwords, tokenize_catalog
from .topics import OUTLIER_TOPIC
from .validation import (
    ConsistencyLevel,
    expert_eval,
    framework_consistency,
    labels_to_csv,
    parse_labeled_pairs,
)

_STAGES = ("ingest", "embed", "fit", "analyze", "validate")

# files each stage owns under <out>/work/; re-running a stage drops
# everything downstream so stale artifacts can never reach publish
_STAGE_FILES = {
    "ingest": ("catalog.csv",),
    "embed": ("embeddings.bin",),
    "fit": ("topics.csv", "keywords.csv"),
    "analyze": ("matrix_subjects.csv", "distributions.csv"),
    "validate": ("labels.csv", "reports"),
}


class _UsageError(Exception):
    pass


# --- program definitions ------------------------------------------------------

def parse_programs(text: str) -> dict[str, dict[str, tuple[int, int]]]:
    """Key/value program config: one `name = SUBJ:g1-g2, SUBJ2, ...` per line.

    A subject without an explicit span covers grades 1-12. '#' starts a
    comment; blank lines are skipped.
    """
    programs: dict[str, dict[str, tuple[int, int]]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise BadProgramFile(lineno, "expected `name = subjects`")
        name, _, body = line.partition("=")
        name = name.strip()
        if not name:
            raise BadProgramFile(lineno, "empty program name")
        if name in programs:
            raise BadProgramFile(lineno, f"duplicate program {name!r}")
        entries: dict[str, tuple[int, int]] = {}
        for chunk in body.split(","):
            chunk = chunk.strip()
            if not chunk:
                raise BadProgramFile(lineno, "empty subject entry")
            subject, _, span = chunk.partition(":")
            subject = subject.strip()
            if not subject:
                raise BadProgramFile(lineno, "empty subject code")
            if span:
                lo_s, _, hi_s = span.strip().partition("-")
                try:
                    lo = int(lo_s)
                    hi = int(hi_s) if hi_s else lo
                except ValueError:
                    raise BadProgramFile(lineno, f"bad grade span {span!r}") from None
            else:
                lo, hi = 1, 12
            if not (1 <= lo <= hi <= 12):
                raise BadProgramFile(lineno, f"grade span {lo}-{hi} out of range")
            if subject in entries:
                raise BadProgramFile(lineno, f"duplicate subject {subject!r}")
            entries[subject] = (lo, hi)
        if not entries:
            raise BadProgramFile(lineno, "program has no subjects")
        programs[name] = entries
    return programs


# --- staged working directory ---------------------------------------------------

class _Workdir:
    def __init__(self, out: str):
        self.root = Path(out)
        self.work = self.root / "work"

    def state_path(self) -> Path:
        return self.work / "config.json"

    def load_state(self) -> dict[str, Any]:
        if self.state_path().is_file():
            return json.loads(self.state_path().read_text("utf-8"))
        return {"config": PipelineConfig().to_dict(),
                "stages": {s: False for s in _STAGES}}

    def save_state(self, state: dict[str, Any]) -> None:
        self.work.mkdir(parents=True, exist_ok=True)
        self.state_path().write_text(
            json.dumps(state, indent=2, sort_keys=True) + "\n", "utf-8")

    def require(self, state: dict[str, Any], stage: str) -> None:
        if not state["stages"].get(stage):
            raise PartialRun(stage)

    def begin(self, state: dict[str, Any], stage: str) -> None:
        """Invalidate this stage and everything after it before rebuilding."""
        idx = _STAGES.index(stage)
        for later in _STAGES[idx:]:
            state["stages"][later] = False
            for name in _STAGE_FILES[later]:
                target = self.work / name
                if target.is_dir():
                    shutil.rmtree(target)
                elif target.exists():
                    target.unlink()

    def finish(self, state: dict[str, Any], stage: str) -> None:
        state["stages"][stage] = True
        self.save_state(state)

    def catalog(self):
        with open(self.work / "catalog.csv", encoding="utf-8", newline="") as f:
            return parse_framework(f)

    def labels(self):
        path = self.work / "labels.csv"
        if not path.is_file():
            return None
        with open(path, encoding="utf-8", newline="") as f:
            return parse_labeled_pairs(f)


# --- subcommands ---------------------------------------------------------------

def _cmd_ingest(args) -> int:
    wd = _Workdir(args.out)
    state = wd.load_state()
    wd.work.mkdir(parents=True, exist_ok=True)
    wd.begin(state, "ingest")
    with open(args.input, encoding="utf-8", newline="") as f:
        catalog = parse_framework(f)
    (wd.work / "catalog.csv").write_text(catalog_to_csv(catalog), "utf-8")
    state["config"]["language"] = args.language
    wd.finish(state, "ingest")
    print(f"ingested {len(catalog)} LOs across {len(catalog.subjects)} subjects "
          f"-> {wd.work / 'catalog.csv'}")
    return 0


def _cmd_embed(args) -> int:
    wd = _Workdir(args.out)
    state = wd.load_state()
    wd.require(state, "ingest")
    wd.begin(state, "embed")
    cfg = state["config"]
    cfg["dim"] = args.dim
    cfg["seed"] = args.seed
    cfg["embedder"] = args.embedder
    cfg["embeddings_path"] = args.embeddings_path
    config = config_from_dict(cfg)
    catalog = wd.catalog()
    docs = tokenize_catalog(catalog, default_stopwords(config.language))
    es = embed_batch(docs, config.provider())
    save_embeddings(es, wd.work / "embeddings.bin")
    wd.finish(state, "embed")
    zeros = int(es.zero_flags.sum())
    print(f"embedded {len(es.ids)} LOs at dim {es.dim} ({zeros} zero vectors) "
          f"-> {wd.work / 'embeddings.bin'}")
    return 0


def _cmd_fit(args) -> int:
    wd = _Workdir(args.out)
    state = wd.load_state()
    wd.require(state, "embed")
    wd.begin(state, "fit")
    cfg = state["config"]
    cfg["reduced_dim"] = args.reduced_dim
    cfg["k"] = args.k
    cfg["min_topic_size"] = args.min_topic_size
    config = config_from_dict(cfg)
    catalog = wd.catalog()
    docs = tokenize_catalog(catalog, default_stopwords(config.language))
    es = load_embeddings(wd.work / "embeddings.bin")
    _, _, assignment, keywords = fit_topics(es, docs, config)
    (wd.work / "topics.csv").write_text(
        topics_to_csv(catalog, assignment.topic_of), "utf-8")
    (wd.work / "keywords.csv").write_text(keywords_to_csv(keywords), "utf-8")
    wd.finish(state, "fit")
    outliers = sum(1 for t in assignment.topic_of.values() if t == OUTLIER_TOPIC)
    print(f"fit {assignment.k} topics ({outliers} outlier LOs) "
          f"-> {wd.work / 'topics.csv'}")
    return 0


def _cmd_analyze(args) -> int:
    from .alignment import MatchSet, subject_matrix, topic_distribution

    wd = _Workdir(args.out)
    state = wd.load_state()
    wd.require(state, "fit")
    wd.begin(state, "analyze")
    catalog = wd.catalog()
    topic_of = parse_topics_csv((wd.work / "topics.csv").read_text("utf-8"))
    keywords = parse_keywords_csv((wd.work / "keywords.csv").read_text("utf-8"))
    matchset = MatchSet(topic_of, catalog)
    matrix = subject_matrix(matchset, catalog)
    dist = topic_distribution(topic_of, catalog, keywords)
    (wd.work / "matrix_subjects.csv").write_text(matrix.to_csv(), "utf-8")
    (wd.work / "distributions.csv").write_text(dist.to_csv(), "utf-8")
    wd.finish(state, "analyze")
    print(f"analyzed {len(matrix.row_labels)} subjects "
          f"-> {wd.work / 'matrix_subjects.csv'}")
    return 0


def _cmd_validate(args) -> int:
    from .alignment import MatchSet
    from .runstore import consistency_doc, expert_doc

    wd = _Workdir(args.out)
    state = wd.load_state()
    wd.require(state, "fit")
    wd.begin(state, "validate")
    catalog = wd.catalog()
    topic_of = parse_topics_csv((wd.work / "topics.csv").read_text("utf-8"))
    matchset = MatchSet(topic_of, catalog)
    reports_dir = wd.work / "reports"
    reports_dir.mkdir(parents=True, exist_ok=True)

    standard = framework_consistency(matchset, catalog, ConsistencyLevel.STANDARD)
    (reports_dir / "consistency_standard.json").write_bytes(
        doc_bytes(consistency_doc(standard)))
    lines = [f"consistency (standard): {standard.n_consistent}/{standard.n_eligible}"
             f" = {standard.accuracy:.4f}"]
    if all(lo.strand_label for lo in catalog.los):
        strand = framework_consistency(matchset, catalog, ConsistencyLevel.STRAND)
        (reports_dir / "consistency_strand.json").write_bytes(
            doc_bytes(consistency_doc(strand)))
        lines.append(f"consistency (strand): {strand.n_consistent}/{strand.n_eligible}"
                     f" = {strand.accuracy:.4f}")

    if args.labels:
        with open(args.labels, encoding="utf-8", newline="") as f:
            labels = parse_labeled_pairs(f)
        (wd.work / "labels.csv").write_text(labels_to_csv(labels), "utf-8")
        report = expert_eval(matchset, labels)
        (reports_dir / "expert_eval.json").write_bytes(doc_bytes(expert_doc(report)))
        lines.append(f"expert eval: {report.n_correct}/{report.n_pairs}"
                     f" = {report.accuracy:.4f}")

    wd.finish(state, "validate")
    print("\n".join(lines))
    return 0


def _cmd_publish(args) -> int:
    wd = _Workdir(args.out)
    state = wd.load_state()
    for stage in _STAGES:
        wd.require(state, stage)
    cfg = dict(state["config"])
    if args.programs:
        cfg["programs"] = {
            name: {s: list(span) for s, span in spans.items()}
            for name, spans in parse_programs(
                Path(args.programs).read_text("utf-8")).items()
        }
    config = config_from_dict(cfg)
    # recompute from the staged inputs; determinism makes this equal the
    # staged previews, and it keeps half-stale work files unpublishable
    outputs = run_pipeline(wd.catalog(), config, wd.labels())
    manifest = publish_run(wd.root, outputs)
    print(f"published run {manifest.run_id} -> {wd.root / manifest.run_id}")
    return 0


def _cmd_run(args) -> int:
    programs = {}
    if args.programs:
        programs = parse_programs(Path(args.programs).read_text("utf-8"))
    config = PipelineConfig(
        language=args.language,
        dim=args.dim,
        embedder=args.embedder,
        embeddings_path=args.embeddings_path,
        seed=args.seed,
        reduced_dim=args.reduced_dim,
        k=args.k,
        min_topic_size=args.min_topic_size,
        programs=programs,
    )
    with open(args.input, encoding="utf-8", newline="") as f:
        catalog = parse_framework(f)
    labels = None
    if args.labels:
        with open(args.labels, encoding="utf-8", newline="") as f:
            labels = parse_labeled_pairs(f)
    outputs = run_pipeline(catalog, config, labels)
    manifest = publish_run(args.out, outputs)
    outliers = sum(1 for t in outputs.assignment.topic_of.values()
                   if t == OUTLIER_TOPIC)
    print(f"published run {manifest.run_id} -> {Path(args.out) / manifest.run_id}\n"
          f"{len(catalog)} LOs, {outputs.assignment.k} topics, "
          f"{outliers} outliers, consistency "
          f"{outputs.consistency_standard.accuracy:.4f}")
    return 0


def _cmd_export(args) -> int:
    from .runstore import export_dashboard_bundle

    snapshot = load_run(args.run_dir)
    written = export_dashboard_bundle(snapshot, args.out)
    print(f"exported {len(written)} documents -> {args.out}")
    return 0


def _cmd_serve(args) -> int:
    snapshot = load_run(args.run_dir)
    host, port = _parse_addr(args.addr)
    server = ApiServer((host, port), snapshot.data, cors_origin=args.cors_origin)
    actual_port = server.server_address[1]
    print(f"serving run {snapshot.run_id} at http://{host}:{actual_port}/api/v1"
          f" (interrupt to stop)")
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def _parse_addr(addr: str) -> tuple[str, int]:
    host, sep, port_s = addr.rpartition(":")
    if not sep or not host:
        raise _UsageError(f"--addr must be HOST:PORT, got {addr!r}")
    try:
        port = int(port_s)
    except ValueError:
        raise _UsageError(f"bad port in --addr: {port_s!r}") from None
    return host, port


# --- HTTP API -------------------------------------------------------------------

class _HttpError(Exception):
    def __init__(self, status: int, message: str):
        super().__init__(message)
        self.status = status
        self.message = message


def _parse_query(qs: str, allowed: tuple[str, ...]) -> dict[str, str]:
    out: dict[str, str] = {}
    for key, value in urllib.parse.parse_qsl(qs, keep_blank_values=True):
        if key not in allowed:
            raise _HttpError(400, f"unexpected query parameter {key!r}")
        if key in out:
            raise _HttpError(400, f"duplicate query parameter {key!r}")
        out[key] = value
    return out


def _as_int(params: dict[str, str], key: str) -> Optional[int]:
    if key not in params:
        return None
    try:
        return int(params[key])
    except ValueError:
        raise _HttpError(400, f"{key} must be an integer") from None


def _as_float(params: dict[str, str], key: str) -> Optional[float]:
    if key not in params:
        return None
    try:
        return float(params[key])
    except ValueError:
        raise _HttpError(400, f"{key} must be a number") from None


def _check_subject(snap: SnapshotData, subject: str) -> None:
    if subject not in snap.catalog.subjects:
        raise _HttpError(422, f"unknown subject {subject!r}")


def handle_api_path(snap: SnapshotData, raw_path: str) -> tuple[int, dict[str, Any]]:
    """Pure request router: (snapshot, path-with-query) -> (status, document)."""
    try:
        split = urllib.parse.urlsplit(raw_path)
        parts = [urllib.parse.unquote(p) for p in split.path.split("/") if p]
        if parts[:2] != ["api", "v1"] or len(parts) < 3:
            raise _HttpError(404, "unknown route")
        rest = parts[2:]
        qs = split.query

        if rest == ["filters"]:
            _parse_query(qs, ())
            return 200, apidocs.doc_filters(snap)

        if rest == ["heatmap"]:
            params = _parse_query(qs, ("cycle", "stream", "program"))
            cycle = _as_int(params, "cycle")
            if cycle is not None and cycle not in snap.catalog.cycles():
                raise _HttpError(422, f"unknown cycle {cycle}")
            stream = params.get("stream")
            if stream is not None:
                known = [s.value for s in snap.catalog.streams() if s.value]
                if stream not in known:
                    raise _HttpError(422, f"unknown stream {stream!r}")
            program = params.get("program")
            if program is not None and program not in apidocs.programs_of(snap):
                raise _HttpError(422, f"unknown program {program!r}")
            return 200, apidocs.doc_heatmap(snap, cycle, stream, program)

        if len(rest) == 4 and rest[0] == "pairs":
            _, subject_a, subject_b, leaf = rest
            _check_subject(snap, subject_a)
            _check_subject(snap, subject_b)
            if leaf == "grades":
                _parse_query(qs, ())
                return 200, apidocs.doc_pair_grades(snap, subject_a, subject_b)
            if leaf == "topics":
                _parse_query(qs, ())
                return 200, apidocs.doc_pair_topics(snap, subject_a, subject_b)
            if leaf == "los":
                params = _parse_query(
                    qs, ("topic", "grade", "min_match_pct", "page", "page_size"))
                topic = _as_int(params, "topic")
                if topic is not None and not 0 <= topic < snap.k:
                    raise _HttpError(422, f"unknown topic {topic}")
                grade = _as_int(params, "grade")
                if grade is not None and grade not in snap.catalog.grades():
                    raise _HttpError(422, f"unknown grade {grade}")
                min_match = _as_float(params, "min_match_pct")
                if min_match is not None and not 0.0 <= min_match <= 100.0:
                    raise _HttpError(422, "min_match_pct must be in [0, 100]")
                page = _as_int(params, "page")
                if page is not None and page < 1:
                    raise _HttpError(400, "page must be >= 1")
                page_size = _as_int(params, "page_size")
                if page_size is not None and not 1 <= page_size <= MAX_PAGE_SIZE:
                    raise _HttpError(400, f"page_size must be in [1, {MAX_PAGE_SIZE}]")
                return 200, apidocs.doc_pair_los(
                    snap, subject_a, subject_b, topic=topic, grade=grade,
                    min_match_pct=min_match, page=page or 1,
                    page_size=page_size or apidocs.DEFAULT_PAGE_SIZE)
            raise _HttpError(404, "unknown route")

        if len(rest) == 2 and rest[0] == "topics":
            try:
                topic_id = int(rest[1])
            except ValueError:
                raise _HttpError(400, "topic id must be an integer") from None
            if not 0 <= topic_id < snap.k:
                raise _HttpError(422, f"unknown topic {topic_id}")
            _parse_query(qs, ())
            return 200, apidocs.doc_topic(snap, topic_id)

        if len(rest) == 3 and rest[0] == "los" and rest[2] == "matches":
            _parse_query(qs, ())
            try:
                return 200, apidocs.doc_lo_matches(snap, rest[1])
            except UnknownCode as e:
                raise _HttpError(404, str(e)) from None

        raise _HttpError(404, "unknown route")
    except _HttpError as e:
        return e.status, {"run_id": snap.run_id, "status": e.status,
                          "error": e.message}


class ApiServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, addr: tuple[str, int], snapshot: SnapshotData,
                 cors_origin: Optional[str] = None):
        super().__init__(addr, _ApiHandler)
        self.snapshot = snapshot
        self.cors_origin = cors_origin


class _ApiHandler(BaseHTTPRequestHandler):
    server: ApiServer
    protocol_version = "HTTP/1.1"

    def _send(self, status: int, body: bytes) -> None:
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("ETag", self.server.snapshot.run_id)
        if self.server.cors_origin:
            self.send_header("Access-Control-Allow-Origin", self.server.cors_origin)
        self.end_headers()
        if body:
            self.wfile.write(body)

    def do_GET(self) -> None:
        snap = self.server.snapshot
        if self.headers.get("If-None-Match") == snap.run_id:
            self._send(304, b"")
            return
        status, doc = handle_api_path(snap, self.path)
        self._send(status, doc_bytes(doc))

    def _reject_write(self) -> None:
        snap = self.server.snapshot
        self._send(405, doc_bytes({"run_id": snap.run_id, "status": 405,
                                   "error": "read-only API: use GET"}))

    do_POST = _reject_write
    do_PUT = _reject_write
    do_DELETE = _reject_write
    do_PATCH = _reject_write

    def log_message(self, format: str, *args) -> None:
        pass  # keep stdout/stderr clean for CLI output


# --- argument parsing -------------------------------------------------------------

class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; remap to 1 (2 means data error here)."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=int, default=0, help="RNG seed (hashing and k-means)")
    p.add_argument("--dim", type=int, default=384, help="embedding dimension")
    p.add_argument("--embedder", choices=("hash", "file"), default="hash",
                   help="vector provider")
    p.add_argument("--embeddings-path", default=None,
                   help="cache file for --embedder file")


def _add_fit_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--reduced-dim", type=int, default=5,
                   help="PCA output dimension")
    p.add_argument("--k", type=int, default=None,
                   help="cluster count (default: one per ~18 LOs)")
    p.add_argument("--min-topic-size", type=int, default=2,
                   help="clusters smaller than this become outliers")


def build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog="curralign",
        description="Curriculum alignment: cluster learning outcomes into "
                    "topics and measure cross-subject overlap.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="parse and normalize a catalog CSV")
    p.add_argument("--input", required=True, help="catalog CSV path")
    p.add_argument("--out", required=True, help="working directory")
    p.add_argument("--language", default="en", help="stop-word language tag")
    p.set_defaults(func=_cmd_ingest)

    p = sub.add_parser("embed", help="compute sentence vectors")
    p.add_argument("--out", required=True)
    _add_model_flags(p)
    p.set_defaults(func=_cmd_embed)

    p = sub.add_parser("fit", help="reduce, cluster, and label topics")
    p.add_argument("--out", required=True)
    _add_fit_flags(p)
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("analyze", help="compute alignment matrices")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_analyze)

    p = sub.add_parser("validate", help="consistency and expert-label checks")
    p.add_argument("--out", required=True)
    p.add_argument("--labels", default=None, help="expert pair-label CSV")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("publish", help="publish the staged run immutably")
    p.add_argument("--out", required=True)
    p.add_argument("--programs", default=None, help="program definition file")
    p.set_defaults(func=_cmd_publish)

    p = sub.add_parser("run", help="ingest through publish in one shot")
    p.add_argument("--input", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--labels", default=None)
    p.add_argument("--language", default="en")
    p.add_argument("--programs", default=None)
    _add_model_flags(p)
    _add_fit_flags(p)
    p.set_defaults(func=_cmd_run)

    p = sub.add_parser("export", help="write the static dashboard bundle")
    p.add_argument("run_dir", help="published run directory (or its manifest)")
    p.add_argument("--out", required=True, help="bundle destination")
    p.set_defaults(func=_cmd_export)

    p = sub.add_parser("serve", help="serve a published run over HTTP")
    p.add_argument("run_dir", help="published run directory (or its manifest)")
    p.add_argument("--addr", default="127.0.0.1:8080", help="HOST:PORT to bind")
    p.add_argument("--cors-origin", default=None,
                   help="value for Access-Control-Allow-Origin")
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command == "embed" and args.embedder == "file" and not args.embeddings_path:
            parser.error("--embedder file requires --embeddings-path")
        if args.command == "run" and args.embedder == "file" and not args.embeddings_path:
            parser.error("--embedder file requires --embeddings-path")
        return args.func(args)
    except SystemExit as e:
        return int(e.code or 0)
    except _UsageError as e:
        print(f"curralign: error: {e}", file=sys.stderr)
        return 1
    except FileNotFoundError as e:
        print(f"curralign: error: {e}", file=sys.stderr)
        return 2
    except CurralignError as e:
        print(f"curralign: error: {e}", file=sys.stderr)
        return 2
    except KeyboardInterrupt:
        return 0


if __name__ == "__main__":
    raise SystemExit(main())
