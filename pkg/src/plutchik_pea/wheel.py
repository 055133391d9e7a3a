"""Plutchik wheel ontology: 24 fine-grained emotions, their 8 groups, and circle geometry.

Each of the 8 groups sits on the unit circle at a multiple of pi/4. Angles are
stored as integer eighth-turns so pairwise scores come out as exact quarters
(0, 0.25, 0.5, 0.75, 1.0) instead of floating approximations.
"""

from __future__ import annotations

import math
from enum import Enum


class UnknownEmotionError(ValueError):
    """Raised when a label string matches no emotion name or abbreviation."""

    def __init__(self, label: str):
        super().__init__(f"unknown emotion label: {label!r}")
        self.label = label


class Emotion8(str, Enum):
    """The eight coarse emotion groups, in canonical table order."""

    AGGRESSIVENESS = "aggressiveness"
    OPTIMISM = "optimism"
    LOVE = "love"
    SUBMISSION = "submission"
    AWE = "awe"
    DISAPPROVAL = "disapproval"
    REMORSE = "remorse"
    CONTEMPT = "contempt"

    @property
    def abbrev(self) -> str:
        return _E8_ABBREV[self]

    @property
    def eighth_turns(self) -> int:
        """Canonical circle position as an integer multiple of pi/4, in 0..7."""
        return _E8_EIGHTH_TURNS[self]

    @property
    def angle(self) -> float:
        """Canonical angle in radians, in [0, 2*pi)."""
        return self.eighth_turns * math.pi / 4.0


class Emotion24(str, Enum):
    """The 24 fine-grained emotions, three per group, in canonical table order."""

    RAGE = "rage"
    ANGER = "anger"
    ANNOYANCE = "annoyance"
    VIGILANCE = "vigilance"
    ANTICIPATION = "anticipation"
    INTEREST = "interest"
    ECSTASY = "ecstasy"
    JOY = "joy"
    SERENITY = "serenity"
    ADMIRATION = "admiration"
    TRUST = "trust"
    ACCEPTANCE = "acceptance"
    TERROR = "terror"
    FEAR = "fear"
    APPREHENSION = "apprehension"
    AMAZEMENT = "amazement"
    SURPRISE = "surprise"
    DISTRACTION = "distraction"
    GRIEF = "grief"
    SADNESS = "sadness"
    PENSIVENESS = "pensiveness"
    LOATHING = "loathing"
    DISGUST = "disgust"
    BOREDOM = "boredom"

    @property
    def abbrev(self) -> str:
        return _E24_ABBREV[self]

    @property
    def group(self) -> Emotion8:
        return _E24_GROUP[self]


_E8_ABBREV: dict[Emotion8, str] = {
    Emotion8.AGGRESSIVENESS: "agrsv",
    Emotion8.OPTIMISM: "optsm",
    Emotion8.LOVE: "love",
    Emotion8.SUBMISSION: "sbmsn",
    Emotion8.AWE: "awe",
    Emotion8.DISAPPROVAL: "dspvl",
    Emotion8.REMORSE: "rmrse",
    Emotion8.CONTEMPT: "cntmp",
}

# Wheel positions: counterclockwise adjacency love, optimism, aggressiveness,
# contempt, remorse, disapproval, awe, submission; disapproval is anchored at
# 7*pi/4 (unit-circle point (sqrt(2)/2, -sqrt(2)/2)), which forces the rest.
_E8_EIGHTH_TURNS: dict[Emotion8, int] = {
    Emotion8.AWE: 0,
    Emotion8.SUBMISSION: 1,
    Emotion8.LOVE: 2,
    Emotion8.OPTIMISM: 3,
    Emotion8.AGGRESSIVENESS: 4,
    Emotion8.CONTEMPT: 5,
    Emotion8.REMORSE: 6,
    Emotion8.DISAPPROVAL: 7,
}

_E24_ROWS: list[tuple[Emotion24, str, Emotion8]] = [
    (Emotion24.RAGE, "rage", Emotion8.AGGRESSIVENESS),
    (Emotion24.ANGER, "anger", Emotion8.AGGRESSIVENESS),
    (Emotion24.ANNOYANCE, "anyce", Emotion8.AGGRESSIVENESS),
    (Emotion24.VIGILANCE, "vglnc", Emotion8.OPTIMISM),
    (Emotion24.ANTICIPATION, "antcp", Emotion8.OPTIMISM),
    (Emotion24.INTEREST, "inrst", Emotion8.OPTIMISM),
    (Emotion24.ECSTASY, "ecsty", Emotion8.LOVE),
    (Emotion24.JOY, "joy", Emotion8.LOVE),
    (Emotion24.SERENITY, "srnty", Emotion8.LOVE),
    (Emotion24.ADMIRATION, "admrn", Emotion8.SUBMISSION),
    (Emotion24.TRUST, "trust", Emotion8.SUBMISSION),
    (Emotion24.ACCEPTANCE, "acptn", Emotion8.SUBMISSION),
    (Emotion24.TERROR, "trror", Emotion8.AWE),
    (Emotion24.FEAR, "fear", Emotion8.AWE),
    (Emotion24.APPREHENSION, "aprhn", Emotion8.AWE),
    (Emotion24.AMAZEMENT, "amzmt", Emotion8.DISAPPROVAL),
    (Emotion24.SURPRISE, "srpse", Emotion8.DISAPPROVAL),
    (Emotion24.DISTRACTION, "dstrn", Emotion8.DISAPPROVAL),
    (Emotion24.GRIEF, "grief", Emotion8.REMORSE),
    (Emotion24.SADNESS, "sadns", Emotion8.REMORSE),
    (Emotion24.PENSIVENESS, "psvne", Emotion8.REMORSE),
    (Emotion24.LOATHING, "lthng", Emotion8.CONTEMPT),
    (Emotion24.DISGUST, "dsgst", Emotion8.CONTEMPT),
    (Emotion24.BOREDOM, "brdom", Emotion8.CONTEMPT),
]

_E24_ABBREV: dict[Emotion24, str] = {e: abbr for e, abbr, _ in _E24_ROWS}
_E24_GROUP: dict[Emotion24, Emotion8] = {e: g for e, _, g in _E24_ROWS}

# Middle-intensity member of each group, used where a single representative
# fine-grained emotion is needed (scores depend only on the group).
GROUP_REPRESENTATIVE: dict[Emotion8, Emotion24] = {
    Emotion8.AGGRESSIVENESS: Emotion24.ANGER,
    Emotion8.OPTIMISM: Emotion24.ANTICIPATION,
    Emotion8.LOVE: Emotion24.JOY,
    Emotion8.SUBMISSION: Emotion24.TRUST,
    Emotion8.AWE: Emotion24.FEAR,
    Emotion8.DISAPPROVAL: Emotion24.SURPRISE,
    Emotion8.REMORSE: Emotion24.SADNESS,
    Emotion8.CONTEMPT: Emotion24.DISGUST,
}

_LOOKUP: dict[str, Emotion24 | Emotion8] = {}
for _g in Emotion8:
    _LOOKUP[_g.value] = _g
    _LOOKUP[_g.abbrev] = _g
for _e in Emotion24:
    _LOOKUP[_e.value] = _e
    _LOOKUP[_e.abbrev] = _e


def group_of(emotion: Emotion24) -> Emotion8:
    """Return the group that owns a fine-grained emotion."""
    return emotion.group


def radians_of(group: Emotion8) -> float:
    """Return the group's canonical angle in radians, in [0, 2*pi)."""
    return group.angle


def pair_score(a: Emotion24, b: Emotion24) -> float:
    """Agreement between two fine-grained emotions: |1 - |angle(a)-angle(b)|/pi|.

    Same group scores 1.0, diametrically opposite groups 0.0, with a linear
    penalty in between. Exact: always one of 0, 0.25, 0.5, 0.75, 1.0.
    """
    d = abs(a.group.eighth_turns - b.group.eighth_turns)
    return abs(4 - d) / 4.0


def parse_emotion(label: str) -> Emotion24 | Emotion8:
    """Resolve a full name or table abbreviation, case-insensitively."""
    found = _LOOKUP.get(label.strip().lower())
    if found is None:
        raise UnknownEmotionError(label)
    return found


def parse_emotion24(label: str) -> Emotion24:
    """Like parse_emotion, but only fine-grained labels are acceptable."""
    found = parse_emotion(label)
    if not isinstance(found, Emotion24):
        raise UnknownEmotionError(label)
    return found
