"""Tweet ingestion pipeline: entity masking, dedup, lexicon filtering, stats.

The pipeline order is normalize -> dedup -> lexicon_filter; each step is pure
and only ever removes or rewrites, never invents records.
"""

from __future__ import annotations

import re
import string
import warnings
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from typing import Optional

from .wheel import Emotion24

# Token patterns. URLs are masked before mentions so an @ inside a link never
# leaves a stray <USER> behind.
_URL_RE = re.compile(r"(?:https?://\S+|\bt\.co/\S+)")
_MENTION_RE = re.compile(r"@\w+")
_HASHTAG_RE = re.compile(r"#\w")

USER_SENTINEL = "<USER>"
URL_SENTINEL = "<URL>"


def normalize_tweet(text: str) -> str:
    """Mask links with <URL> and user mentions with <USER>; leave the rest alone."""
    text = _URL_RE.sub(URL_SENTINEL, text)
    return _MENTION_RE.sub(USER_SENTINEL, text)


@dataclass(frozen=True)
class TweetRecord:
    """One tweet, carrying both the original and the masked text."""

    id: str
    text: str
    raw_text: str
    source: Optional[str] = None
    labels: Optional[frozenset[Emotion24]] = None

    @classmethod
    def from_raw(
        cls,
        id: str,
        raw_text: str,
        source: Optional[str] = None,
        labels: Optional[Iterable[Emotion24]] = None,
    ) -> "TweetRecord":
        return cls(
            id=id,
            text=normalize_tweet(raw_text),
            raw_text=raw_text,
            source=source,
            labels=None if labels is None else frozenset(labels),
        )


@dataclass(frozen=True)
class Lexicon:
    """Word -> associated emotion categories, case-folded, exact-token lookup."""

    entries: Mapping[str, frozenset[str]]

    @classmethod
    def from_tsv(cls, lines: Iterable[str]) -> "Lexicon":
        """Parse word<TAB>category<TAB>flag rows; flag "1" means associated."""
        entries: dict[str, set[str]] = {}
        for lineno, line in enumerate(lines, start=1):
            line = line.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 3 or parts[2] not in ("0", "1"):
                raise ValueError(f"malformed lexicon row {lineno}: {line!r}")
            word, category, flag = parts
            bucket = entries.setdefault(word.casefold(), set())
            if flag == "1":
                bucket.add(category)
        return cls(entries={w: frozenset(cats) for w, cats in entries.items()})

    def emotions_of(self, token: str) -> frozenset[str]:
        return self.entries.get(token.casefold(), frozenset())


@dataclass(frozen=True)
class CorpusStats:
    vocab_original: int
    vocab_filtered: int
    pct_hashtag: float
    pct_mention: float
    pct_link: float
    tweet_count: int


def dedup(corpus: Iterable[TweetRecord], *, raw: bool = False) -> list[TweetRecord]:
    """Keep the first occurrence of each text value, in input order.

    Keys on the masked text by default, so tweets differing only in who was
    mentioned or which link they carried collapse together; raw=True keys on
    the original text instead.
    """
    seen: set[str] = set()
    kept: list[TweetRecord] = []
    for record in corpus:
        key = record.raw_text if raw else record.text
        if key not in seen:
            seen.add(key)
            kept.append(record)
    return kept


def _content_tokens(text: str) -> Iterable[str]:
    for token in text.split():
        stripped = token.strip(string.punctuation).casefold()
        if stripped:
            yield stripped


def lexicon_filter(corpus: Iterable[TweetRecord], lexicon: Lexicon) -> list[TweetRecord]:
    """Keep tweets where at least one token is a lexicon word with an emotion."""
    if not lexicon.entries:
        warnings.warn("lexicon_filter: empty lexicon drops every tweet")
    return [
        record
        for record in corpus
        if any(lexicon.emotions_of(tok) for tok in _content_tokens(record.text))
    ]


def corpus_stats(corpus: Iterable[TweetRecord]) -> CorpusStats:
    """Vocabulary sizes plus hashtag/mention/link coverage percentages.

    Vocabulary is whitespace tokens: distinct raw tokens for vocab_original,
    distinct masked tokens minus the two sentinels for vocab_filtered. The
    percentages are measured on the raw text, before any masking.
    """
    vocab_raw: set[str] = set()
    vocab_masked: set[str] = set()
    n = with_hashtag = with_mention = with_link = 0
    for record in corpus:
        n += 1
        vocab_raw.update(record.raw_text.split())
        vocab_masked.update(
            tok
            for tok in record.text.split()
            if tok not in (USER_SENTINEL, URL_SENTINEL)
        )
        if any(_HASHTAG_RE.match(tok) for tok in record.raw_text.split()):
            with_hashtag += 1
        if _MENTION_RE.search(record.raw_text):
            with_mention += 1
        if _URL_RE.search(record.raw_text):
            with_link += 1
    if n == 0:
        return CorpusStats(0, 0, 0.0, 0.0, 0.0, 0)
    return CorpusStats(
        vocab_original=len(vocab_raw),
        vocab_filtered=len(vocab_masked),
        pct_hashtag=100.0 * with_hashtag / n,
        pct_mention=100.0 * with_mention / n,
        pct_link=100.0 * with_link / n,
        tweet_count=n,
    )
