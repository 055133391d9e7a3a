"""Agreement scoring for set-valued emotion annotations.

Builds up from a directed score between two annotation sets to per-item,
per-worker, and corpus-level summaries, plus the filtering and label
aggregation steps that sit downstream, and two reference coefficients
(Krippendorff's alpha with a pluggable distance, Jaccard similarity).
"""

from __future__ import annotations

import math
import warnings
from collections import Counter, defaultdict
from collections.abc import Callable, Hashable, Iterable, Mapping, Sequence
from dataclasses import dataclass
from typing import NamedTuple, TypeVar

from .wheel import Emotion24, pair_score

ItemId = str
WorkerId = str


class DuplicateAnnotationError(ValueError):
    """Two records share the same (item, worker) pair."""

    def __init__(self, item_id: ItemId, worker_id: WorkerId):
        super().__init__(f"duplicate annotation for item {item_id!r} by worker {worker_id!r}")
        self.item_id = item_id
        self.worker_id = worker_id


class SingleAnnotatorError(ValueError):
    """An item has fewer than two distinct annotators, so no pair exists."""

    def __init__(self, item_id: ItemId):
        super().__init__(f"item {item_id!r} has fewer than two annotators")
        self.item_id = item_id


@dataclass(frozen=True)
class AnnotationRecord:
    """One worker's emotion set for one item."""

    item_id: ItemId
    worker_id: WorkerId
    emotions: frozenset[Emotion24]

    def __post_init__(self) -> None:
        object.__setattr__(self, "emotions", frozenset(self.emotions))
        if not self.emotions:
            raise ValueError(
                f"empty emotion set for item {self.item_id!r}, worker {self.worker_id!r}"
            )


@dataclass(frozen=True)
class AgreementReport:
    """Agreement scores at every level, from (item, worker) cells up to one corpus mean.

    per_item_per_worker only contains entries for items with at least two
    annotators; corpus_mean is None when the corpus had no such item.
    """

    per_item_per_worker: dict[tuple[ItemId, WorkerId], float]
    per_worker: dict[WorkerId, float]
    corpus_mean: float | None
    dropped_workers: frozenset[WorkerId] = frozenset()
    skipped_items: tuple[ItemId, ...] = ()


class AggregatedLabels(NamedTuple):
    labels: dict[ItemId, frozenset[Emotion24]]
    flagged: frozenset[ItemId]


def _mean(values: Sequence[float]) -> float:
    # fsum gives a correctly-rounded total, so the result is bit-identical
    # no matter what order the values arrived in.
    return math.fsum(values) / len(values)


def directed_agreement(x: Iterable[Emotion24], y: Iterable[Emotion24]) -> float:
    """Score x against y: mean over x's emotions of the best match anywhere in y.

    Directed on purpose — each of x's choices is credited with its most
    charitable counterpart in y, so a worker who picked a subset of another's
    emotions scores higher against them than the reverse.
    """
    xs = frozenset(x)
    ys = frozenset(y)
    if not xs:
        raise ValueError("directed_agreement: first annotation set (x) is empty")
    if not ys:
        raise ValueError("directed_agreement: second annotation set (y) is empty")
    return _mean([max(pair_score(a, b) for b in ys) for a in xs])


def symmetric_agreement(x: Iterable[Emotion24], y: Iterable[Emotion24]) -> float:
    """Mean of the two directed scores. Convenience only; nothing downstream uses it."""
    xs = frozenset(x)
    ys = frozenset(y)
    return (directed_agreement(xs, ys) + directed_agreement(ys, xs)) / 2.0


def per_item_pea(
    annotations: Sequence[AnnotationRecord], *, symmetric: bool = False
) -> dict[WorkerId, float]:
    """Per-worker agreement on a single item.

    Each worker is scored as the mean of directed_agreement(worker, other)
    over every co-annotator — directed outward from the scored worker.
    symmetric=True swaps in symmetric_agreement as the comparison instead.
    """
    if not annotations:
        raise ValueError("per_item_pea: no annotations given")
    item_id = annotations[0].item_id
    by_worker: dict[WorkerId, frozenset[Emotion24]] = {}
    for rec in annotations:
        if rec.item_id != item_id:
            raise ValueError(
                f"per_item_pea: mixed items {item_id!r} and {rec.item_id!r} in one call"
            )
        if rec.worker_id in by_worker:
            raise DuplicateAnnotationError(rec.item_id, rec.worker_id)
        by_worker[rec.worker_id] = rec.emotions
    if len(by_worker) < 2:
        raise SingleAnnotatorError(item_id)
    compare = symmetric_agreement if symmetric else directed_agreement
    scores: dict[WorkerId, float] = {}
    for w, emotions in by_worker.items():
        others = [compare(emotions, v) for u, v in by_worker.items() if u != w]
        scores[w] = _mean(others)
    return scores


def corpus_pea(
    annotations: Iterable[AnnotationRecord],
    *,
    item_weighted: bool = False,
    symmetric: bool = False,
) -> AgreementReport:
    """Roll per-item scores up to workers and the corpus.

    A worker's score is the unweighted mean over the multi-annotator items
    they touched. corpus_mean averages workers equally by default; with
    item_weighted=True it averages the (item, worker) cells instead, so
    prolific workers count more. Single-annotator items are recorded in
    skipped_items rather than failing the run.
    """
    by_item: dict[ItemId, list[AnnotationRecord]] = defaultdict(list)
    seen: set[tuple[ItemId, WorkerId]] = set()
    for rec in annotations:
        key = (rec.item_id, rec.worker_id)
        if key in seen:
            raise DuplicateAnnotationError(rec.item_id, rec.worker_id)
        seen.add(key)
        by_item[rec.item_id].append(rec)

    cells: dict[tuple[ItemId, WorkerId], float] = {}
    skipped: list[ItemId] = []
    for item_id in sorted(by_item):
        try:
            item_scores = per_item_pea(by_item[item_id], symmetric=symmetric)
        except SingleAnnotatorError:
            skipped.append(item_id)
            continue
        for worker_id, score in item_scores.items():
            cells[(item_id, worker_id)] = score

    if not cells:
        warnings.warn("corpus_pea: no item has two or more annotators; report is empty")
        return AgreementReport(
            per_item_per_worker={},
            per_worker={},
            corpus_mean=None,
            skipped_items=tuple(skipped),
        )

    per_worker_cells: dict[WorkerId, list[float]] = defaultdict(list)
    for (_, worker_id), score in sorted(cells.items()):
        per_worker_cells[worker_id].append(score)
    per_worker = {w: _mean(scores) for w, scores in sorted(per_worker_cells.items())}

    if item_weighted:
        corpus_mean = _mean([cells[k] for k in sorted(cells)])
    else:
        corpus_mean = _mean([per_worker[w] for w in sorted(per_worker)])

    return AgreementReport(
        per_item_per_worker=cells,
        per_worker=per_worker,
        corpus_mean=corpus_mean,
        skipped_items=tuple(skipped),
    )


def filter_workers(
    report: AgreementReport, threshold: float = 0.55
) -> tuple[frozenset[WorkerId], frozenset[WorkerId]]:
    """Split workers into (kept, dropped) at the threshold — at-or-below is dropped.

    One pass only: scores come from the report as given, with no re-scoring
    of the survivors against each other.
    """
    if not 0.0 <= threshold <= 1.0:
        raise ValueError(f"threshold must be in [0, 1], got {threshold}")
    dropped = frozenset(w for w, s in report.per_worker.items() if s <= threshold)
    kept = frozenset(report.per_worker) - dropped
    return kept, dropped


def aggregate_labels(
    annotations: Iterable[AnnotationRecord], min_votes: int = 1
) -> AggregatedLabels:
    """Fold (already filtered) annotations into one emotion set per item.

    An emotion makes the cut when at least min_votes workers chose it. Items
    whose set comes out empty stay in the result and are listed in flagged.
    """
    if min_votes < 1:
        raise ValueError(f"min_votes must be >= 1, got {min_votes}")
    votes: dict[ItemId, Counter[Emotion24]] = defaultdict(Counter)
    seen: set[tuple[ItemId, WorkerId]] = set()
    for rec in annotations:
        key = (rec.item_id, rec.worker_id)
        if key in seen:
            raise DuplicateAnnotationError(rec.item_id, rec.worker_id)
        seen.add(key)
        votes[rec.item_id].update(rec.emotions)
    labels = {
        item: frozenset(e for e, n in counts.items() if n >= min_votes)
        for item, counts in votes.items()
    }
    flagged = frozenset(item for item, emotions in labels.items() if not emotions)
    return AggregatedLabels(labels=labels, flagged=flagged)


V = TypeVar("V", bound=Hashable)


def nominal_distance(a: object, b: object) -> float:
    """0 for identical values, 1 otherwise."""
    return 0.0 if a == b else 1.0


def jaccard(a: Iterable[Hashable], b: Iterable[Hashable]) -> float:
    """Set overlap |A∩B| / |A∪B|; undefined (error) when both sets are empty."""
    sa, sb = frozenset(a), frozenset(b)
    if not sa and not sb:
        raise ValueError("jaccard is undefined for two empty sets")
    return len(sa & sb) / len(sa | sb)


def jaccard_distance(a: Iterable[Hashable], b: Iterable[Hashable]) -> float:
    """1 − jaccard(a, b), for use as a krippendorff_alpha distance."""
    return 1.0 - jaccard(a, b)


def krippendorff_alpha(
    items: Mapping[ItemId, Mapping[WorkerId, V]],
    distance: Callable[[V, V], float] = nominal_distance,
) -> float:
    """Chance-corrected agreement 1 − D_o/D_e under a pluggable distance.

    Works over the coincidence structure of unique values: within-item value
    pairs weighted by 1/(m−1) give observed disagreement, and all cross-corpus
    value pairs give expected disagreement. Items with a single annotator are
    ignored. When every pairable value is identical, expected disagreement is
    zero and alpha is defined as 1.0 (with a warning).
    """
    if len(items) < 2:
        raise ValueError("krippendorff_alpha needs at least two items")
    unit_counts: list[Counter[V]] = []
    for _, workers in sorted(items.items()):
        if len(workers) >= 2:
            unit_counts.append(Counter(workers[w] for w in sorted(workers)))
    if not unit_counts:
        raise ValueError("krippendorff_alpha needs at least one item with two annotators")

    totals: Counter[V] = Counter()
    for counts in unit_counts:
        totals.update(counts)
    values = list(totals)
    n = sum(totals.values())

    def pair_total(counts: Mapping[V, int], weight: float) -> float:
        # Sum of distance over ordered pairs of distinct slots, from value counts.
        acc = 0.0
        for i, c in enumerate(values):
            nc = counts.get(c, 0)
            if not nc:
                continue
            for k in values[i:]:
                nk = counts.get(k, 0)
                if not nk:
                    continue
                pairs = nc * (nc - 1) if c == k else 2 * nc * nk
                if pairs:
                    acc += pairs * weight * distance(c, k)
        return acc

    d_observed = math.fsum(
        pair_total(counts, 1.0 / (sum(counts.values()) - 1)) for counts in unit_counts
    ) / n
    d_expected = pair_total(totals, 1.0) / (n * (n - 1))

    if d_expected == 0.0:
        warnings.warn("krippendorff_alpha: zero expected disagreement; defining alpha = 1.0")
        return 1.0
    return 1.0 - d_observed / d_expected
