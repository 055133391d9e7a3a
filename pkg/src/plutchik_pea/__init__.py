"""Wheel-aware agreement metrics and corpus tooling for set-valued emotion annotations."""

__version__ = "0.1.0"

from .agreement import (
    AggregatedLabels,
    AgreementReport,
    AnnotationRecord,
    DuplicateAnnotationError,
    SingleAnnotatorError,
    aggregate_labels,
    corpus_pea,
    directed_agreement,
    filter_workers,
    jaccard,
    jaccard_distance,
    krippendorff_alpha,
    nominal_distance,
    per_item_pea,
    symmetric_agreement,
)
from .analytics import (
    CooccurrenceMatrix,
    TokenDistribution,
    cooccurrence,
    emotion_distribution,
    jsd,
    top_k_density,
)
from .calibration import (
    ABPair,
    AgreementBand,
    CalibrationResult,
    Ranking,
    enumerate_ab_pairs,
    interpret,
    pea_rank,
    random_baseline,
    sample_hits,
)
from .corpus import (
    CorpusStats,
    Lexicon,
    TweetRecord,
    corpus_stats,
    dedup,
    lexicon_filter,
    normalize_tweet,
)
from .tasks import (
    ClassifiedItem,
    NegativeShortfallError,
    TaskExample,
    TaskSplit,
    build_binary_tasks,
    split_multiclass,
    verify_split,
)
from .wheel import (
    Emotion8,
    Emotion24,
    UnknownEmotionError,
    group_of,
    pair_score,
    parse_emotion,
    radians_of,
)

__all__ = [
    "__version__",
    "ABPair",
    "AggregatedLabels",
    "AgreementBand",
    "AgreementReport",
    "AnnotationRecord",
    "CalibrationResult",
    "ClassifiedItem",
    "CooccurrenceMatrix",
    "CorpusStats",
    "DuplicateAnnotationError",
    "Emotion24",
    "Emotion8",
    "Lexicon",
    "NegativeShortfallError",
    "Ranking",
    "SingleAnnotatorError",
    "TaskExample",
    "TaskSplit",
    "TokenDistribution",
    "TweetRecord",
    "UnknownEmotionError",
    "aggregate_labels",
    "build_binary_tasks",
    "cooccurrence",
    "corpus_pea",
    "corpus_stats",
    "dedup",
    "directed_agreement",
    "emotion_distribution",
    "enumerate_ab_pairs",
    "filter_workers",
    "group_of",
    "interpret",
    "jaccard",
    "jaccard_distance",
    "jsd",
    "krippendorff_alpha",
    "lexicon_filter",
    "nominal_distance",
    "normalize_tweet",
    "pair_score",
    "parse_emotion",
    "pea_rank",
    "per_item_pea",
    "radians_of",
    "random_baseline",
    "sample_hits",
    "split_multiclass",
    "symmetric_agreement",
    "top_k_density",
    "verify_split",
]
