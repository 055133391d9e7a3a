"""Descriptive analyses over labeled corpora: label counts, group co-occurrence,
token distributions, and Jensen–Shannon divergence between corpora."""

from __future__ import annotations

import math
import warnings
from collections import Counter
from collections.abc import Callable, Iterable, Mapping
from dataclasses import dataclass
from typing import NamedTuple

from .corpus import TweetRecord
from .wheel import Emotion8, Emotion24

Tokenizer = Callable[[str], list[str]]


@dataclass(frozen=True)
class CooccurrenceMatrix:
    """Symmetric 8x8 item counts over emotion groups.

    counts[g][h] is the number of items whose label set touches both groups;
    the diagonal counts[g][g] is the number of items touching g at all.
    """

    counts: dict[Emotion8, dict[Emotion8, int]]

    def __getitem__(self, pair: tuple[Emotion8, Emotion8]) -> int:
        g, h = pair
        return self.counts[g][h]


@dataclass(frozen=True)
class TokenDistribution:
    """Probability mass over tokens; validated to be a proper distribution."""

    probs: dict[str, float]

    def __post_init__(self) -> None:
        if any(p < 0.0 for p in self.probs.values()):
            raise ValueError("token probabilities must be non-negative")
        total = math.fsum(self.probs.values())
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"token probabilities sum to {total}, not 1")

    @classmethod
    def from_counts(cls, counts: Mapping[str, int]) -> "TokenDistribution":
        total = sum(counts.values())
        if total <= 0:
            raise ValueError("cannot normalize an empty token count table")
        return cls(probs={t: c / total for t, c in counts.items() if c > 0})


class DensityRow(NamedTuple):
    token: str
    density_a: float
    density_b: float


def _require_labels(record: TweetRecord) -> frozenset[Emotion24]:
    if record.labels is None:
        raise ValueError(f"record {record.id!r} has no labels")
    return record.labels


def emotion_distribution(corpus: Iterable[TweetRecord]) -> dict[Emotion24, int]:
    """Item counts per emotion; a multi-label item counts once per label."""
    counts = {e: 0 for e in Emotion24}
    for record in corpus:
        for emotion in _require_labels(record):
            counts[emotion] += 1
    return counts


def cooccurrence(corpus: Iterable[TweetRecord]) -> CooccurrenceMatrix:
    """Group-level co-occurrence: both orientations of every distinct group pair."""
    counts = {g: {h: 0 for h in Emotion8} for g in Emotion8}
    for record in corpus:
        groups = sorted({e.group for e in _require_labels(record)}, key=list(Emotion8).index)
        for i, g in enumerate(groups):
            counts[g][g] += 1
            for h in groups[i + 1 :]:
                counts[g][h] += 1
                counts[h][g] += 1
    return CooccurrenceMatrix(counts=counts)


def whitespace_tokens(text: str) -> list[str]:
    return text.split()


def subword_tokenizer(vocab: Iterable[str]) -> Tokenizer:
    """Greedy longest-match segmentation against a fixed subword vocabulary.

    Each whitespace word is scanned left to right, always taking the longest
    vocabulary piece that prefixes the remainder; a character not covered by
    any piece passes through as a single-character token.
    """
    pieces = frozenset(vocab)
    longest = max((len(p) for p in pieces), default=0)

    def tokenize(text: str) -> list[str]:
        out: list[str] = []
        for word in text.split():
            i = 0
            while i < len(word):
                for j in range(min(len(word), i + longest), i, -1):
                    if word[i:j] in pieces:
                        out.append(word[i:j])
                        i = j
                        break
                else:
                    out.append(word[i])
                    i += 1
        return out

    return tokenize


def count_tokens(
    texts: Iterable[str], tokenize: Tokenizer = whitespace_tokens
) -> Counter[str]:
    counts: Counter[str] = Counter()
    for text in texts:
        counts.update(tokenize(text))
    return counts


def jsd(a: TokenDistribution, b: TokenDistribution, base: float = 2.0) -> float:
    """Jensen–Shannon divergence ½KL(A‖M) + ½KL(B‖M) with M the even mixture.

    Base 2 by default, which bounds the result to [0, 1]; pass base=math.e
    for nats. Tokens present on only one side contribute through M.
    """
    if base <= 1.0:
        raise ValueError(f"log base must exceed 1, got {base}")

    if base == 2.0:
        log = math.log2
    else:
        denom = math.log(base)

        def log(x: float) -> float:
            return math.log(x) / denom

    def kl_to_mixture(p: Mapping[str, float]) -> float:
        terms = []
        for token, mass in p.items():
            if mass > 0.0:
                mixture = (a.probs.get(token, 0.0) + b.probs.get(token, 0.0)) / 2.0
                terms.append(mass * log(mass / mixture))
        return math.fsum(terms)

    return (kl_to_mixture(a.probs) + kl_to_mixture(b.probs)) / 2.0


def top_k_density(
    a: Mapping[str, int], b: Mapping[str, int], k: int = 1000
) -> list[DensityRow]:
    """Density table over the k most frequent tokens shared by both corpora.

    Rows are sorted by combined raw frequency (ties broken by token), and each
    side's densities are renormalized over the selected shared tokens.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    shared = [t for t in a if t in b and a[t] > 0 and b[t] > 0]
    if not shared:
        raise ValueError("corpora share no tokens")
    if len(shared) < k:
        warnings.warn(
            f"only {len(shared)} shared tokens available, fewer than k={k}; using all"
        )
    shared.sort(key=lambda t: (-(a[t] + b[t]), t))
    top = shared[:k]
    total_a = sum(a[t] for t in top)
    total_b = sum(b[t] for t in top)
    return [DensityRow(t, a[t] / total_a, b[t] / total_b) for t in top]
