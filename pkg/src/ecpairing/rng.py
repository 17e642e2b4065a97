"""Seeded, splittable random generators.

Every randomized routine takes an optional ``rng``; when omitted a generator derived
from a fixed seed and the routine's name is used, so results are reproducible.
"""

import hashlib
import random


def named_rng(seed=0, *names) -> random.Random:
    """A random.Random whose state depends only on ``seed`` and the name path."""
    h = hashlib.sha256(repr((int(seed),) + tuple(str(n) for n in names)).encode())
    return random.Random(int.from_bytes(h.digest(), "big"))


def split(rng: random.Random, name) -> random.Random:
    """Derive an independent child generator without disturbing ``rng`` much."""
    return named_rng(rng.getrandbits(64), name)


def ensure(rng, *names) -> random.Random:
    return rng if rng is not None else named_rng(0, *names)
