"""Dynamic program for the LCS of two strings avoiding a set of substrings.

``f[i, j, k]`` is the length of the longest common subsequence of
``X[:i]`` and ``Y[:j]`` that avoids every pattern and ends in automaton
state ``k``.  States never pass through ``MATCH``, so every value is
realized by a legal subsequence.

Entries for unreachable states are 0, as on the boundary.  Extending such
a "phantom" state can only over-estimate the suffix the automaton tracks,
which may flag extra matches but never misses a real one; the true optimum
is always reached along the exact path as well.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numba import njit

from .automaton import (ConstraintSet, ExclusionAutomaton,
                        build_automaton, normalize)
from .errors import InconsistentTable, InstanceError
from .textio import MAX_SEQUENCE

VALUE_DTYPE = np.uint32


@dataclass(frozen=True)
class DPTable:
    n: int
    m: int
    s: int
    f: np.ndarray  # shape (n + 1, m + 1, s)

    def best(self, automaton: ExclusionAutomaton) -> tuple[int, int]:
        return best_state(self.f[self.n, self.m], automaton)


@dataclass(frozen=True)
class SolveStats:
    n: int
    m: int
    d: int
    r: int
    s: int
    elapsed: float  # seconds


@dataclass(frozen=True)
class SolveResult:
    length: int
    lcs: bytes | None
    terminal_state: int
    normalization: tuple[tuple[bytes, str], ...]
    stats: SolveStats


def transition_rows(automaton: ExclusionAutomaton) -> np.ndarray:
    """``lam`` expanded to a (256, s) table indexed by byte, then state.

    Rows for bytes outside the pattern alphabet are all zeros (root).
    """
    rows = np.zeros((256, automaton.s), dtype=np.int32)
    for col, ch in enumerate(automaton.alphabet):
        rows[ch] = automaton.lam[:, col]
    return rows


@njit(cache=True)
def _fill_row(prev, cur, x, y, lam_x):
    # rows are state-major, shape (s, m + 1); prev is row i-1, cur gets row i
    s, w = prev.shape
    for k in range(s):
        for j in range(w):
            cur[k, j] = prev[k, j]
    # forward update: every source state k pushes into its successor t
    for j in range(1, w):
        if y[j - 1] == x:
            for k in range(s):
                t = lam_x[k]
                if t >= 0:
                    cur[t, j] = max(cur[t, j], prev[k, j - 1] + 1)
    # the f(i, j-1, k) term
    for k in range(s):
        run = cur[k, 0]
        for j in range(1, w):
            run = max(run, cur[k, j])
            cur[k, j] = run


@njit(cache=True)
def _fill_table(x, y, lam, f):
    for i in range(1, x.shape[0] + 1):
        _fill_row(f[i - 1], f[i], x[i - 1], y, lam[x[i - 1]])


@njit(cache=True)
def _fill_rolling(x, y, lam, a, b):
    for i in range(x.shape[0]):
        _fill_row(a, b, x[i], y, lam[x[i]])
        a, b = b, a
    return a


def _as_array(seq: bytes) -> np.ndarray:
    return np.frombuffer(seq, dtype=np.uint8)


def best_state(values: np.ndarray, automaton: ExclusionAutomaton) -> tuple[int, int]:
    """(max value, state attaining it) over one cell's state vector.

    Ties go to the shallowest state, then the smallest index.  A phantom
    source can push the optimum onto a state deeper than the witness's real
    one, but the real state always ties, and it is the shallowest.
    """
    length = int(values.max())
    depth = automaton.depth
    k = min(np.flatnonzero(values == length), key=lambda q: (depth[q], q))
    return length, int(k)


def _check_sizes(X: bytes, Y: bytes) -> None:
    if len(X) > MAX_SEQUENCE or len(Y) > MAX_SEQUENCE:
        raise InstanceError("sequences longer than 2**31 bytes are not supported")


def solve_table(X: bytes, Y: bytes, automaton: ExclusionAutomaton) -> DPTable:
    _check_sizes(X, Y)
    n, m, s = len(X), len(Y), automaton.s
    cube = np.zeros((n + 1, s, m + 1), dtype=VALUE_DTYPE)
    _fill_table(_as_array(X), _as_array(Y), transition_rows(automaton), cube)
    cube.setflags(write=False)
    return DPTable(n, m, s, cube.transpose(0, 2, 1))


def solve_length_rolling(X: bytes, Y: bytes, automaton: ExclusionAutomaton) -> tuple[int, int]:
    """Length and terminal state with only two rows of the table alive."""
    _check_sizes(X, Y)
    a = np.zeros((automaton.s, len(Y) + 1), dtype=VALUE_DTYPE)
    b = np.empty_like(a)
    row = _fill_rolling(_as_array(X), _as_array(Y), transition_rows(automaton), a, b)
    return best_state(row[:, len(Y)], automaton)


def max_sigma(f: np.ndarray, automaton: ExclusionAutomaton, i: int, j: int, k: int, ch: int) -> int:
    """Source state ``q`` maximizing ``f[i-1, j-1, q]`` over ``lam(q, ch) == k``.

    Smallest such ``q`` on ties; -1 if no state moves to ``k`` on ``ch``.
    """
    best, arg = -1, -1
    for q in range(automaton.s):
        if automaton.step(q, ch) == k and f[i - 1, j - 1, q] > best:
            best, arg = int(f[i - 1, j - 1, q]), q
    return arg


def solve_table_naive(X: bytes, Y: bytes, automaton: ExclusionAutomaton) -> np.ndarray:
    """Pull-form evaluation of the recurrence, cell by cell.

    Slow; used to cross-check :func:`solve_table`.
    """
    n, m, s = len(X), len(Y), automaton.s
    f = np.zeros((n + 1, m + 1, s), dtype=VALUE_DTYPE)
    for i in range(1, n + 1):
        x = X[i - 1]
        for j in range(1, m + 1):
            for k in range(s):
                if x != Y[j - 1]:
                    f[i, j, k] = max(f[i - 1, j, k], f[i, j - 1, k])
                else:
                    q = max_sigma(f, automaton, i, j, k, x)
                    u = f[i - 1, j - 1, q] + 1 if q >= 0 else 0
                    f[i, j, k] = max(f[i - 1, j - 1, k], u)
    return f


def backtrace(table: DPTable, X: bytes, Y: bytes, automaton: ExclusionAutomaton,
              i: int, j: int, k: int) -> bytes:
    """A witness of length ``f[i, j, k]`` for the prefixes ``X[:i]``, ``Y[:j]``.

    At a match cell the emitting step is tried first (smallest source
    state), then moving up, then left.
    """
    f = table.f
    out = bytearray()
    while i > 0 and j > 0 and f[i, j, k] > 0:
        v = f[i, j, k]
        x = X[i - 1]
        if x == Y[j - 1]:
            q = max_sigma(f, automaton, i, j, k, x)
            if q >= 0 and f[i - 1, j - 1, q] + 1 == v:
                out.append(x)
                i, j, k = i - 1, j - 1, q
                continue
        if f[i - 1, j, k] == v:
            i -= 1
        elif f[i, j - 1, k] == v:
            j -= 1
        else:
            raise InconsistentTable(f"no predecessor explains f[{i}, {j}, {k}] = {v}")
    out.reverse()
    return bytes(out)


def solve(X: bytes, Y: bytes, raw_patterns: Sequence[bytes] = (), *,
          length_only: bool = False, want_witness: bool | None = None) -> SolveResult:
    """Normalize the patterns, run the DP and (optionally) recover a witness.

    Without a witness only two DP rows are kept in memory.
    """
    if want_witness is None:
        want_witness = not length_only
    if length_only and want_witness:
        raise ValueError("length_only and want_witness are mutually exclusive")
    X, Y = bytes(X), bytes(Y)
    start = time.perf_counter()
    cs: ConstraintSet = normalize(raw_patterns)
    automaton = build_automaton(cs)
    lcs = None
    if want_witness:
        table = solve_table(X, Y, automaton)
        length, state = table.best(automaton)
        lcs = backtrace(table, X, Y, automaton, len(X), len(Y), state)
    else:
        length, state = solve_length_rolling(X, Y, automaton)
    elapsed = time.perf_counter() - start
    stats = SolveStats(len(X), len(Y), cs.d, cs.r, automaton.s, elapsed)
    return SolveResult(length, lcs, state, cs.removed, stats)
