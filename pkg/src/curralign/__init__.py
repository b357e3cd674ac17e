"""Curriculum alignment: topic modeling over learning outcomes, alignment
matrices between subjects, and a read-only API for the review dashboard."""

from .alignment import (
    AlignmentMatrix,
    Dendrogram,
    MatchSet,
    Scope,
    SpiralityEntry,
    TopicDistribution,
    build_matches,
    cross_subject_topics,
    grade_matrix,
    hclust_subjects,
    round_pct,
    spirality_report,
    subject_matrix,
    topic_distribution,
)
from .catalog import (
    FrameworkCatalog,
    LearningOutcome,
    LoCodeParts,
    Stream,
    SubjectType,
    catalog_stats,
    catalog_to_csv,
    parse_framework,
    parse_lo_code,
    write_catalog,
)
from .embed import (
    EmbeddingSet,
    ProviderConfig,
    ProviderKind,
    cosine,
    embed_batch,
    hash_embed,
    load_embeddings,
    save_embeddings,
)
from .errors import CurralignError
from .pipeline import (
    PipelineConfig,
    PipelineOutputs,
    config_from_dict,
    fit_topics,
    run_pipeline,
)
from .runstore import (
    RunManifest,
    RunSnapshot,
    export_dashboard_bundle,
    load_run,
    publish_run,
)
from .textprep import (
    STOPWORDS_VERSION,
    TokenizedDoc,
    default_stopwords,
    normalize_text,
    tokenize_catalog,
)
from .topics import (
    OUTLIER_TOPIC,
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
    LabeledPair,
    LabeledPairSet,
    PairEvalReport,
    expert_eval,
    framework_consistency,
    parse_labeled_pairs,
)

__version__ = "0.1.0"

__all__ = [
    "AlignmentMatrix", "Dendrogram", "MatchSet", "Scope", "SpiralityEntry",
    "TopicDistribution", "build_matches", "cross_subject_topics",
    "grade_matrix", "hclust_subjects", "round_pct", "spirality_report",
    "subject_matrix", "topic_distribution",
    "FrameworkCatalog", "LearningOutcome", "LoCodeParts", "Stream",
    "SubjectType", "catalog_stats", "catalog_to_csv", "parse_framework",
    "parse_lo_code", "write_catalog",
    "EmbeddingSet", "ProviderConfig", "ProviderKind", "cosine", "embed_batch",
    "hash_embed", "load_embeddings", "save_embeddings",
    "CurralignError",
    "PipelineConfig", "PipelineOutputs", "config_from_dict", "fit_topics",
    "run_pipeline",
    "RunManifest", "RunSnapshot", "export_dashboard_bundle", "load_run",
    "publish_run",
    "STOPWORDS_VERSION", "TokenizedDoc", "default_stopwords", "normalize_text",
    "tokenize_catalog",
    "OUTLIER_TOPIC", "KmeansResult", "PcaModel", "TopicAssignment",
    "TopicKeywords", "assign_topics", "ctfidf_keywords", "default_k",
    "fit_pca", "kmeans_fit", "transform",
    "ConsistencyLevel", "ConsistencyReport", "LabeledPair", "LabeledPairSet",
    "PairEvalReport", "expert_eval", "framework_consistency",
    "parse_labeled_pairs",
    "__version__",
]
