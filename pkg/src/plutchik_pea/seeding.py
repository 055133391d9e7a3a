"""Deterministic RNG derivation so independent pipeline stages never share streams."""

from __future__ import annotations

import hashlib
import random


def derive_rng(seed: int, name: str) -> random.Random:
    """Return a Random whose state depends only on (seed, name).

    Hashing the pair means two stages with different names get independent
    streams, and inserting a new stage never perturbs existing ones.
    """
    digest = hashlib.sha256(f"{seed}:{name}".encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))
