"""Seeded random instances for tests, ``gen`` and ``bench``.

Characters are drawn uniformly from the first ``alphabet`` lowercase
letters; pattern lengths are uniform in ``[1, max_pattern_len]``.
"""

from __future__ import annotations

import random
import string
from dataclasses import dataclass

MAX_ALPHABET = len(string.ascii_lowercase)
BENCH_PATTERN_LEN = 8


@dataclass(frozen=True)
class Instance:
    X: bytes
    Y: bytes
    patterns: list[bytes]
    source: str = "inline"


def letters(alphabet: int) -> bytes:
    if not 1 <= alphabet <= MAX_ALPHABET:
        raise ValueError(f"alphabet size must be in [1, {MAX_ALPHABET}]")
    return string.ascii_lowercase[:alphabet].encode()


def random_string(rng: random.Random, length: int, alphabet: bytes) -> bytes:
    return bytes(rng.choice(alphabet) for _ in range(length))


def random_instance(rng: random.Random, n: int, m: int, alphabet: int,
                    num_patterns: int, max_pattern_len: int) -> Instance:
    if min(n, m, num_patterns) < 0:
        raise ValueError("sizes must be nonnegative")
    if max_pattern_len < 1 and num_patterns:
        raise ValueError("max pattern length must be at least 1")
    sigma = letters(alphabet)
    X = random_string(rng, n, sigma)
    Y = random_string(rng, m, sigma)
    patterns = [random_string(rng, rng.randint(1, max_pattern_len), sigma)
                for _ in range(num_patterns)]
    return Instance(X, Y, patterns, source=f"random:{n}x{m}")


def bench_patterns(rng: random.Random, r: int, alphabet: bytes,
                   length: int = BENCH_PATTERN_LEN) -> list[bytes]:
    """Distinct patterns of near-equal length summing to exactly ``r`` bytes.

    Long random patterns rarely share prefixes beyond the first couple of
    levels, so the state count grows roughly linearly with ``r``.
    """
    if r < 0:
        raise ValueError("r must be nonnegative")
    if r == 0:
        return []
    d = -(-r // length)
    base, extra = divmod(r, d)
    sizes = [base + (i < extra) for i in range(d)]
    out: list[bytes] = []
    seen: set[bytes] = set()
    for size in sizes:
        while True:
            p = random_string(rng, size, alphabet)
            if p not in seen:
                break
        seen.add(p)
        out.append(p)
    return out
