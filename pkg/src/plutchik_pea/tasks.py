"""Balanced binary classification task construction and verification.

Each emotion group gets its own task: every item carrying the group is a
positive, an equal number of items not carrying it are sampled as negatives,
and the shuffled pool is split 80/10/10. All randomness comes from generators
derived per task name, so tasks are reproducible and order-independent of
each other.
"""

from __future__ import annotations

import warnings
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from typing import NamedTuple, Optional

from .corpus import TweetRecord
from .seeding import derive_rng
from .wheel import Emotion8


class NegativeShortfallError(ValueError):
    """Not enough negative candidates to balance a task's positives."""

    def __init__(self, task: str, needed: int, available: int):
        super().__init__(
            f"task {task!r}: need {needed} negatives but only {available} items "
            f"lack the label (short {needed - available})"
        )
        self.task = task
        self.needed = needed
        self.available = available


class TaskExample(NamedTuple):
    item_id: str
    text: str
    label: int  # 1 = positive, 0 = negative


class ClassifiedItem(NamedTuple):
    """A single-class item, for carving a multi-class dataset into binary tasks."""

    item_id: str
    text: str
    category: str


@dataclass(frozen=True)
class TaskSplit:
    """One binary task's three partitions plus the seed that produced them.

    The emotion field holds the task name — an Emotion8 value for the
    group tasks, or a bare class name for multi-class carve-ups.
    """

    emotion: str
    train: tuple[TaskExample, ...]
    valid: tuple[TaskExample, ...]
    test: tuple[TaskExample, ...]
    seed: int

    @property
    def examples(self) -> tuple[TaskExample, ...]:
        return self.train + self.valid + self.test

    @property
    def counts(self) -> tuple[int, int, int]:
        return (len(self.train), len(self.valid), len(self.test))


class SplitCheck(NamedTuple):
    name: str
    passed: bool
    detail: str


def _split_sizes(n: int) -> tuple[int, int, int]:
    # 80/10/10 with train floored and the leftover halved; when the leftover
    # is odd the extra example lands in test.
    train = int(0.8 * n)
    valid = (n - train) // 2
    return train, valid, n - train - valid


def _partition(pool: Sequence[TaskExample], name: str, seed: int) -> TaskSplit:
    n_train, n_valid, _ = _split_sizes(len(pool))
    return TaskSplit(
        emotion=name,
        train=tuple(pool[:n_train]),
        valid=tuple(pool[n_train : n_train + n_valid]),
        test=tuple(pool[n_train + n_valid :]),
        seed=seed,
    )


def build_binary_tasks(
    corpus: Sequence[TweetRecord], seed: int, *, balanced: bool = True
) -> dict[Emotion8, TaskSplit]:
    """Build one balanced binary task per emotion group from a labeled corpus.

    Negatives are sampled uniformly without replacement from the items whose
    label set does not touch the group — an item positive for the group is
    never eligible, whatever else it is labeled with. balanced=False keeps
    every negative candidate instead of sampling (expect several times more
    negatives than positives).
    """
    seen_ids: set[str] = set()
    for record in corpus:
        if record.labels is None:
            raise ValueError(f"record {record.id!r} has no labels")
        if record.id in seen_ids:
            raise ValueError(f"duplicate item id {record.id!r} in corpus")
        seen_ids.add(record.id)

    tasks: dict[Emotion8, TaskSplit] = {}
    for group in Emotion8:
        rng = derive_rng(seed, group.value)
        positives = [r for r in corpus if group in {e.group for e in r.labels}]
        candidates = [r for r in corpus if group not in {e.group for e in r.labels}]
        if balanced:
            if len(candidates) < len(positives):
                raise NegativeShortfallError(group.value, len(positives), len(candidates))
            negatives = rng.sample(candidates, len(positives))
        else:
            negatives = candidates
        pool = [TaskExample(r.id, r.text, 1) for r in positives] + [
            TaskExample(r.id, r.text, 0) for r in negatives
        ]
        rng.shuffle(pool)
        tasks[group] = _partition(pool, group.value, seed)
    return tasks


def split_multiclass(
    items: Iterable[ClassifiedItem],
    classes: Optional[Sequence[str]] = None,
    seed: int = 0,
) -> dict[str, TaskSplit]:
    """Carve a single-class dataset into one balanced binary task per class.

    Falls back to the sorted set of observed classes when none are given.
    A class with no items is skipped with a warning; a class whose positives
    outnumber all other items is a hard error, the same as build_binary_tasks.
    """
    items = list(items)
    seen_ids: set[str] = set()
    for item in items:
        if item.item_id in seen_ids:
            raise ValueError(f"duplicate item id {item.item_id!r} in dataset")
        seen_ids.add(item.item_id)

    if classes is None:
        classes = sorted({item.category for item in items})

    tasks: dict[str, TaskSplit] = {}
    for cls in classes:
        rng = derive_rng(seed, cls)
        positives = [i for i in items if i.category == cls]
        if not positives:
            warnings.warn(f"class {cls!r} has no items; task skipped")
            continue
        candidates = [i for i in items if i.category != cls]
        if len(candidates) < len(positives):
            raise NegativeShortfallError(cls, len(positives), len(candidates))
        negatives = rng.sample(candidates, len(positives))
        pool = [TaskExample(i.item_id, i.text, 1) for i in positives] + [
            TaskExample(i.item_id, i.text, 0) for i in negatives
        ]
        rng.shuffle(pool)
        tasks[cls] = _partition(pool, cls, seed)
    return tasks


def verify_split(
    split: TaskSplit, expected_counts: Optional[tuple[int, int, int]] = None
) -> list[SplitCheck]:
    """Check a task's structural properties; returns one pass/fail per property."""
    checks: list[SplitCheck] = []
    ids = [ex.item_id for ex in split.examples]
    n = len(ids)

    unique = len(ids) == len(set(ids))
    checks.append(
        SplitCheck(
            "disjoint-partitions",
            unique,
            "no item id repeats" if unique else f"{n - len(set(ids))} repeated item ids",
        )
    )

    sizes = split.counts
    targets = (0.8 * n, 0.1 * n, 0.1 * n)
    ratio_ok = all(abs(size - target) <= 1.0 for size, target in zip(sizes, targets))
    checks.append(
        SplitCheck(
            "split-ratio",
            ratio_ok,
            f"sizes {sizes} vs 80/10/10 of {n}",
        )
    )

    label_counts = Counter(ex.label for ex in split.examples)
    balanced = label_counts[0] == label_counts[1]
    checks.append(
        SplitCheck(
            "aggregate-balance",
            balanced,
            f"{label_counts[1]} positive vs {label_counts[0]} negative",
        )
    )

    if expected_counts is not None:
        match = sizes == tuple(expected_counts)
        checks.append(
            SplitCheck(
                "expected-counts",
                match,
                f"sizes {sizes} vs expected {tuple(expected_counts)}",
            )
        )
    return checks
