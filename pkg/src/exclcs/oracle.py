"""Brute-force reference computations.

Nothing here touches the keyword tree or the DP; these functions exist to
check them.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InstanceTooLarge

ORACLE_CAP = 20


@dataclass(frozen=True)
class OracleResult:
    length: int
    witnesses: tuple[bytes, ...]


def is_subsequence(z: bytes, s: bytes) -> bool:
    pos = 0
    for ch in s:
        if pos == len(z):
            break
        if z[pos] == ch:
            pos += 1
    return pos == len(z)


def contains_any_substring(s: bytes, patterns: Iterable[bytes]) -> bool:
    for p in patterns:
        for off in range(len(s) - len(p) + 1):
            if s[off:off + len(p)] == p:
                return True
    return False


def naive_sigma(s: bytes, patterns: Sequence[bytes]) -> bytes:
    """Longest suffix of ``s`` that is a prefix of some pattern."""
    longest = max((len(p) for p in patterns), default=0)
    for size in range(min(len(s), longest), 0, -1):
        suffix = s[len(s) - size:]
        for p in patterns:
            if p[:size] == suffix:
                return suffix
    return b""


def oracle_lcs_excluding(X: bytes, Y: bytes, patterns: Sequence[bytes],
                         all_witnesses: bool = False) -> OracleResult:
    """Exhaustive search over subsequences of the shorter input.

    Candidates are tried longest first; the first length with a valid
    candidate is the answer.
    """
    short, other = (X, Y) if len(X) <= len(Y) else (Y, X)
    if len(short) > ORACLE_CAP:
        raise InstanceTooLarge(
            f"oracle enumerates 2**{len(short)} subsequences; cap is {ORACLE_CAP}")
    for size in range(len(short), -1, -1):
        found: dict[bytes, None] = {}
        for idx in combinations(range(len(short)), size):
            z = bytes(short[i] for i in idx)
            if z in found:
                continue
            if is_subsequence(z, other) and not contains_any_substring(z, patterns):
                found[z] = None
                if not all_witnesses:
                    break
        if found:
            return OracleResult(size, tuple(sorted(found)))
    # only reachable when the empty string is itself forbidden
    return OracleResult(0, ())
