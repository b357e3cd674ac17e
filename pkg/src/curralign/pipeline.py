"""End-to-end orchestration: catalog -> topics -> alignment -> reports.

Every stage is deterministic given (config, catalog, labels); the same
inputs must reproduce bit-identical artifacts, so all knobs that influence
any output live in PipelineConfig and nothing reads ambient state.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Mapping, Optional

from .alignment import (
    AlignmentMatrix,
    Dendrogram,
    MatchSet,
    SpiralityEntry,
    TopicDistribution,
    build_matches,
    cross_subject_topics,
    hclust_subjects,
    spirality_report,
    subject_matrix,
    topic_distribution,
)
from .catalog import FrameworkCatalog
from .embed import DEFAULT_DIM, EmbeddingSet, ProviderConfig, ProviderKind, embed_batch
from .errors import DegenerateInput
from .textprep import STOPWORDS_VERSION, TokenizedDoc, default_stopwords, tokenize_catalog
from .topics import (
    DEFAULT_MIN_TOPIC_SIZE,
    DEFAULT_REDUCED_DIM,
    KmeansResult,
    PcaModel,
    TopicAssignment,
    TopicKeywords,
    assign_topics,
    ctfidf_keywords,
    default_k,
    fit_pca,
    kmeans_fit,
    transform,
)
from .validation import (
    ConsistencyLevel,
    ConsistencyReport,
    LabeledPairSet,
    PairEvalReport,
    expert_eval,
    framework_consistency,
)

# program name -> subject -> inclusive grade span
ProgramMap = Mapping[str, Mapping[str, tuple[int, int]]]


@dataclass(frozen=True)
class PipelineConfig:
    language: str = "en"
    dim: int = DEFAULT_DIM
    embedder: str = "hash"  # "hash" | "file"
    embeddings_path: Optional[str] = None
    seed: int = 0
    reduced_dim: int = DEFAULT_REDUCED_DIM
    k: Optional[int] = None  # None -> default_k(len(catalog))
    min_topic_size: int = DEFAULT_MIN_TOPIC_SIZE
    programs: ProgramMap = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        """Canonical JSON-ready form; feeds both the manifest and the run id."""
        return {
            "language": self.language,
            "stopwords_version": STOPWORDS_VERSION,
            "dim": self.dim,
            "embedder": self.embedder,
            "embeddings_path": self.embeddings_path,
            "seed": self.seed,
            "reduced_dim": self.reduced_dim,
            "k": self.k,
            "min_topic_size": self.min_topic_size,
            "programs": {
                name: {subj: list(span) for subj, span in sorted(spans.items())}
                for name, spans in sorted(self.programs.items())
            },
        }

    def provider(self) -> ProviderConfig:
        return ProviderConfig(kind=ProviderKind(self.embedder), dim=self.dim,
                              seed=self.seed, path=self.embeddings_path)


def config_from_dict(raw: Mapping[str, Any]) -> PipelineConfig:
    programs = {
        str(name): {str(s): (int(span[0]), int(span[1])) for s, span in spans.items()}
        for name, spans in dict(raw.get("programs") or {}).items()
    }
    return PipelineConfig(
        language=raw.get("language", "en"),
        dim=int(raw.get("dim", DEFAULT_DIM)),
        embedder=raw.get("embedder", "hash"),
        embeddings_path=raw.get("embeddings_path"),
        seed=int(raw.get("seed", 0)),
        reduced_dim=int(raw.get("reduced_dim", DEFAULT_REDUCED_DIM)),
        k=None if raw.get("k") is None else int(raw["k"]),
        min_topic_size=int(raw.get("min_topic_size", DEFAULT_MIN_TOPIC_SIZE)),
        programs=programs,
    )


@dataclass
class PipelineOutputs:
    config: PipelineConfig
    catalog: FrameworkCatalog
    docs: list[TokenizedDoc]
    embeddings: EmbeddingSet
    pca: PcaModel
    kmeans: KmeansResult
    assignment: TopicAssignment
    keywords: TopicKeywords
    matchset: MatchSet
    matrix: AlignmentMatrix
    dendrogram: Optional[Dendrogram]
    distribution: TopicDistribution
    consistency_standard: ConsistencyReport
    consistency_strand: Optional[ConsistencyReport]
    expert: Optional[PairEvalReport]
    labels: Optional[LabeledPairSet]
    cross_topics: list[int]
    spirality: dict[str, list[SpiralityEntry]]


def effective_reduced_dim(config: PipelineConfig, n: int) -> int:
    return max(1, min(config.reduced_dim, n - 1, config.dim))


def effective_k(config: PipelineConfig, n: int) -> int:
    k = config.k if config.k is not None else default_k(n)
    return max(1, min(k, n))


def fit_topics(embeddings: EmbeddingSet, docs: list[TokenizedDoc],
               config: PipelineConfig) -> tuple[PcaModel, KmeansResult,
                                                TopicAssignment, TopicKeywords]:
    """Reduce, cluster, assign, and label; shared by the staged CLI and
    run_pipeline so both paths produce identical artifacts."""
    n = len(embeddings.ids)
    pca = fit_pca(embeddings.vectors, effective_reduced_dim(config, n))
    reduced = transform(pca, embeddings.vectors)
    kmeans = kmeans_fit(reduced, effective_k(config, n), config.seed)
    assignment = assign_topics(embeddings.ids, kmeans, config.seed,
                               config.min_topic_size)
    # an all-outlier run is legal; it just has nothing to label
    keywords = (ctfidf_keywords(assignment, docs) if assignment.k > 0
                else TopicKeywords(per_topic={}))
    return pca, kmeans, assignment, keywords


def run_pipeline(catalog: FrameworkCatalog, config: PipelineConfig,
                 labels: Optional[LabeledPairSet] = None) -> PipelineOutputs:
    n = len(catalog)
    if n < 2:
        raise DegenerateInput("pipeline needs at least 2 learning outcomes")

    stopwords = default_stopwords(config.language)
    docs = tokenize_catalog(catalog, stopwords)
    embeddings = embed_batch(docs, config.provider())
    pca, kmeans, assignment, keywords = fit_topics(embeddings, docs, config)

    matchset = build_matches(assignment, catalog)
    matrix = subject_matrix(matchset, catalog)
    dendrogram = hclust_subjects(matrix) if len(matrix.row_labels) >= 2 else None
    distribution = topic_distribution(assignment.topic_of, catalog, keywords)

    consistency_standard = framework_consistency(matchset, catalog,
                                                 ConsistencyLevel.STANDARD)
    consistency_strand = None
    if all(lo.strand_label for lo in catalog.los):
        consistency_strand = framework_consistency(matchset, catalog,
                                                   ConsistencyLevel.STRAND)
    expert = expert_eval(matchset, labels) if labels is not None else None

    return PipelineOutputs(
        config=config,
        catalog=catalog,
        docs=docs,
        embeddings=embeddings,
        pca=pca,
        kmeans=kmeans,
        assignment=assignment,
        keywords=keywords,
        matchset=matchset,
        matrix=matrix,
        dendrogram=dendrogram,
        distribution=distribution,
        consistency_standard=consistency_standard,
        consistency_strand=consistency_strand,
        expert=expert,
        labels=labels,
        cross_topics=cross_subject_topics(distribution),
        spirality={s: spirality_report(distribution, s)
                   for s in sorted(catalog.subjects)},
    )
