"""Monte-Carlo baseline, interpretive bands, and A/B ranking-evaluation sampling.

The random baseline answers "what does PEA give when annotators guess?", the
bands turn raw scores into words, and the A/B machinery builds the
three-worker comparison pairs used to sanity-check the metric against human
rankings.
"""

from __future__ import annotations

import math
import warnings
from collections import defaultdict
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import NamedTuple

from .agreement import (
    AnnotationRecord,
    ItemId,
    WorkerId,
    corpus_pea,
    directed_agreement,
    symmetric_agreement,
)
from .seeding import derive_rng
from .wheel import GROUP_REPRESENTATIVE, Emotion8, Emotion24


class ABPair(NamedTuple):
    """Two annotation pairs on one item sharing a worker: A=(w1,w2), B=(w1,w3)."""

    item_id: ItemId
    shared_worker: WorkerId
    pair_a: tuple[WorkerId, WorkerId]
    pair_b: tuple[WorkerId, WorkerId]


class HitBatch(NamedTuple):
    hit_id: str
    pairs: tuple[ABPair, ...]


class AgreementBand(str, Enum):
    """Verbal bands for scores on the x100 scale, low-inclusive boundaries."""

    NONE = "no agreement"
    POOR = "poor agreement"
    MODERATE = "moderate agreement"
    HIGH = "high agreement"


class Ranking(str, Enum):
    A_HIGHER = "a_higher"
    SAME = "same"
    B_HIGHER = "b_higher"


@dataclass(frozen=True)
class CalibrationResult:
    """Per-worker scores from a synthetic corpus, their mean, and a histogram."""

    scores: tuple[float, ...]
    mean: float
    histogram: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.scores:
            raise ValueError("calibration produced no scores")
        if abs(self.mean - math.fsum(self.scores) / len(self.scores)) > 1e-12:
            raise ValueError("mean is inconsistent with scores")
        if sum(self.histogram) != len(self.scores):
            raise ValueError("histogram does not cover every score")

    @property
    def bin_width(self) -> float:
        return 1.0 / len(self.histogram)


def _histogram(scores: Sequence[float], bins: int) -> tuple[int, ...]:
    counts = [0] * bins
    for s in scores:
        # a score of exactly 1.0 belongs to the top bin
        counts[min(int(s * bins), bins - 1)] += 1
    return tuple(counts)


def random_baseline(
    n_annotations: int = 5000,
    emotions_per_annotation: int = 3,
    workers_per_item: int = 5,
    seed: int = 0,
    bins: int = 20,
) -> CalibrationResult:
    """Score a corpus of uniformly random annotations.

    Synthesizes n_annotations // workers_per_item items, each annotated by
    workers_per_item single-use workers choosing a uniform random subset of
    the eight groups (materialized as each group's middle-intensity emotion,
    which is score-neutral). The whole table then runs through corpus_pea
    unchanged. Each item draws from its own generator derived from
    (seed, item index), so results do not depend on evaluation order.
    """
    if n_annotations <= 0 or emotions_per_annotation <= 0 or workers_per_item <= 0:
        raise ValueError("all calibration parameters must be positive")
    if emotions_per_annotation > len(Emotion8):
        raise ValueError(
            f"emotions_per_annotation must be <= {len(Emotion8)}, "
            f"got {emotions_per_annotation}"
        )
    if workers_per_item < 2:
        raise ValueError("need at least two workers per item to score agreement")
    n_items = n_annotations // workers_per_item
    if n_items == 0:
        raise ValueError("n_annotations is smaller than workers_per_item")
    if n_annotations % workers_per_item:
        warnings.warn(
            f"{n_annotations % workers_per_item} annotations dropped to keep "
            f"items at {workers_per_item} workers each"
        )

    groups = list(Emotion8)
    records = []
    for i in range(n_items):
        rng = derive_rng(seed, f"item:{i}")
        for j in range(workers_per_item):
            chosen = rng.sample(groups, emotions_per_annotation)
            records.append(
                AnnotationRecord(
                    item_id=f"item{i}",
                    worker_id=f"item{i}/w{j}",
                    emotions=frozenset(GROUP_REPRESENTATIVE[g] for g in chosen),
                )
            )

    report = corpus_pea(records)
    scores = tuple(report.per_worker[w] for w in sorted(report.per_worker))
    assert report.corpus_mean is not None
    return CalibrationResult(
        scores=scores,
        mean=report.corpus_mean,
        histogram=_histogram(scores, bins),
    )


def interpret(score: float) -> AgreementBand:
    """Map a [0,1] score to its verbal band (boundaries belong to the band above)."""
    if not 0.0 <= score <= 1.0:
        raise ValueError(f"score must be in [0, 1], got {score}")
    if score < 0.25:
        return AgreementBand.NONE
    if score < 0.50:
        return AgreementBand.POOR
    if score < 0.75:
        return AgreementBand.MODERATE
    return AgreementBand.HIGH


def enumerate_ab_pairs(annotations: Iterable[AnnotationRecord]) -> list[ABPair]:
    """All three-worker comparison pairs: for each item, every choice of a
    shared worker plus an unordered pair of distinct co-annotators.

    An item with m workers yields m * C(m-1, 2) pairs; items with fewer than
    three workers yield none.
    """
    workers_by_item: dict[ItemId, set[WorkerId]] = defaultdict(set)
    for rec in annotations:
        workers_by_item[rec.item_id].add(rec.worker_id)
    pairs: list[ABPair] = []
    for item_id in sorted(workers_by_item):
        workers = sorted(workers_by_item[item_id])
        for shared in workers:
            others = [w for w in workers if w != shared]
            for w2, w3 in combinations(others, 2):
                pairs.append(
                    ABPair(
                        item_id=item_id,
                        shared_worker=shared,
                        pair_a=(shared, w2),
                        pair_b=(shared, w3),
                    )
                )
    return pairs


def sample_hits(
    pairs: Sequence[ABPair],
    n_sample: int = 500,
    pairs_per_hit: int = 10,
    seed: int = 0,
) -> list[HitBatch]:
    """Draw a seeded sample of pairs and chunk it into fixed-size batches."""
    if not pairs:
        raise ValueError("cannot sample from an empty pair pool")
    if n_sample < 1 or pairs_per_hit < 1:
        raise ValueError("n_sample and pairs_per_hit must be positive")
    if n_sample > len(pairs):
        raise ValueError(f"cannot sample {n_sample} from a pool of {len(pairs)}")
    if n_sample % pairs_per_hit:
        warnings.warn(
            f"last batch is short: {n_sample} is not a multiple of {pairs_per_hit}"
        )
    rng = derive_rng(seed, "ab-sample")
    sampled = rng.sample(list(pairs), n_sample)
    return [
        HitBatch(
            hit_id=f"hit-{i:03d}",
            pairs=tuple(sampled[start : start + pairs_per_hit]),
        )
        for i, start in enumerate(range(0, n_sample, pairs_per_hit))
    ]


def annotation_index(
    annotations: Iterable[AnnotationRecord],
) -> dict[tuple[ItemId, WorkerId], frozenset[Emotion24]]:
    """Index annotations for pea_rank lookups."""
    return {(rec.item_id, rec.worker_id): rec.emotions for rec in annotations}


def pea_rank(
    pair: ABPair,
    index: Mapping[tuple[ItemId, WorkerId], frozenset[Emotion24]],
    directed: bool = False,
) -> Ranking:
    """Which of the pair's two worker pairs agrees more, per the metric.

    Uses the symmetric score by default since the two pairs are unordered;
    directed=True scores outward from the shared worker instead. Scores
    within 1e-12 rank as SAME.
    """

    def emotions(worker: WorkerId) -> frozenset[Emotion24]:
        try:
            return index[(pair.item_id, worker)]
        except KeyError:
            raise ValueError(
                f"missing annotation for item {pair.item_id!r}, worker {worker!r}"
            ) from None

    compare = directed_agreement if directed else symmetric_agreement
    shared = emotions(pair.shared_worker)
    score_a = compare(shared, emotions(pair.pair_a[1]))
    score_b = compare(shared, emotions(pair.pair_b[1]))
    if abs(score_a - score_b) <= 1e-12:
        return Ranking.SAME
    return Ranking.A_HIGHER if score_a > score_b else Ranking.B_HIGHER
