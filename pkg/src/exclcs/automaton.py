"""Keyword tree, failure links and the exclusion automaton.

The automaton tracks, for a growing string, the deepest keyword-tree node
whose label is a suffix of that string.  Leaves (complete patterns) are not
states: stepping onto one yields ``MATCH``, meaning the string now contains
a forbidden pattern.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import EmptyConstraint

MATCH = -1

DUPLICATE = "duplicate"
SUPERSTRING = "superstring"


@dataclass(frozen=True)
class ConstraintSet:
    """Normalized pattern list: no duplicates, no pattern inside another."""

    patterns: tuple[bytes, ...]
    removed: tuple[tuple[bytes, str], ...] = ()

    @property
    def d(self) -> int:
        return len(self.patterns)

    @property
    def r(self) -> int:
        return sum(len(p) for p in self.patterns)


@dataclass
class KeywordTree:
    """Trie over a pattern list, nodes numbered in preorder (root is 0).

    Children are visited in ascending byte order, so node numbers are
    deterministic.  ``terminal[v]`` is the index of the pattern ending at
    ``v`` or -1.  ``pre`` stays ``None`` until :func:`compute_failure`.
    """

    patterns: tuple[bytes, ...]
    parent: list[int]
    char: list[int]
    children: list[dict[int, int]]
    depth: list[int]
    terminal: list[int]
    pre: list[int] | None = None

    @property
    def t(self) -> int:
        return len(self.parent)

    def is_leaf(self, v: int) -> bool:
        return not self.children[v]

    def label(self, v: int) -> bytes:
        out = bytearray()
        while v != 0:
            out.append(self.char[v])
            v = self.parent[v]
        return bytes(reversed(out))

    def leaf_of(self, pattern_index: int) -> int:
        return self.terminal.index(pattern_index)

    def sigma(self, s: bytes) -> int:
        """Deepest node (leaves included) whose label is a suffix of ``s``."""
        if self.pre is None:
            raise ValueError("failure links not computed")
        v = 0
        for ch in s:
            while v and ch not in self.children[v]:
                v = self.pre[v]
            v = self.children[v].get(ch, 0)
        return v


PatternsLike = Union[ConstraintSet, Sequence[bytes]]


def _patterns_of(cs: PatternsLike) -> tuple[bytes, ...]:
    if isinstance(cs, ConstraintSet):
        return cs.patterns
    return tuple(bytes(p) for p in cs)


def build_tree(cs: PatternsLike) -> KeywordTree:
    """Insert every pattern into a trie and renumber the nodes in preorder."""
    patterns = _patterns_of(cs)
    # insertion-order trie first, then relabel by preorder
    kids: list[dict[int, int]] = [{}]
    term: list[int] = [-1]
    for idx, p in enumerate(patterns):
        v = 0
        for ch in p:
            nxt = kids[v].get(ch)
            if nxt is None:
                nxt = len(kids)
                kids[v][ch] = nxt
                kids.append({})
                term.append(-1)
            v = nxt
        if term[v] == -1:
            term[v] = idx

    t = len(kids)
    parent = [0] * t
    char = [-1] * t
    children: list[dict[int, int]] = [{} for _ in range(t)]
    depth = [0] * t
    terminal = [-1] * t
    new_id = 0
    stack = [(0, 0, -1, 0)]  # old id, new parent, char, depth
    while stack:
        old, par, ch, dep = stack.pop()
        v = new_id
        new_id += 1
        parent[v] = par
        char[v] = ch
        depth[v] = dep
        terminal[v] = term[old]
        if v:
            children[par][ch] = v
        for c in sorted(kids[old], reverse=True):
            stack.append((kids[old][c], v, c, dep + 1))
    for v in range(t):
        children[v] = dict(sorted(children[v].items()))
    return KeywordTree(patterns, parent, char, children, depth, terminal)


def bfs_order(tree: KeywordTree) -> list[int]:
    order = [0]
    queue = deque([0])
    while queue:
        u = queue.popleft()
        for v in tree.children[u].values():
            order.append(v)
            queue.append(v)
    return order


def compute_failure(tree: KeywordTree) -> KeywordTree:
    """Fill ``tree.pre`` breadth-first; linear in the total pattern length."""
    pre = [0] * tree.t
    for u in bfs_order(tree):
        for ch, v in tree.children[u].items():
            if u == 0:
                pre[v] = 0
                continue
            f = pre[u]
            while f and ch not in tree.children[f]:
                f = pre[f]
            pre[v] = tree.children[f].get(ch, 0)
    tree.pre = pre
    return tree


def keyword_tree(cs: PatternsLike) -> KeywordTree:
    return compute_failure(build_tree(cs))


def detect_superstrings(tree: KeywordTree) -> set[int]:
    """Indices of patterns that have another pattern as a proper substring.

    Expects a duplicate-free pattern list with failure links computed.
    Pattern B contains pattern A iff some node on B's root path has a
    failure chain that reaches A's terminal node; prefixes count too, since
    a pattern ending at an inner node of B's path is itself a substring.
    """
    if tree.pre is None:
        raise ValueError("failure links not computed")
    pre = tree.pre
    # chain_hit[v]: a terminal node lies on v's proper failure chain
    chain_hit = [False] * tree.t
    for v in bfs_order(tree)[1:]:
        f = pre[v]
        chain_hit[v] = f != 0 and (tree.terminal[f] != -1 or chain_hit[f])

    # above[v]: some strict ancestor (not the root) is terminal or chain-hit
    above = [False] * tree.t
    flagged: set[int] = set()
    for v in range(1, tree.t):  # preorder: parents come first
        p = tree.parent[v]
        if p:
            above[v] = above[p] or tree.terminal[p] != -1 or chain_hit[p]
        idx = tree.terminal[v]
        if idx != -1 and (above[v] or chain_hit[v]):
            flagged.add(idx)
    return flagged


def normalize(raw_patterns: Iterable[bytes]) -> ConstraintSet:
    """Drop duplicate patterns and patterns that contain another one.

    Dropped patterns cannot change the answer: excluding the smaller
    pattern already excludes every string containing the larger one.
    The first occurrence of a duplicated pattern is the one kept.
    """
    raw = [bytes(p) for p in raw_patterns]
    for p in raw:
        if not p:
            raise EmptyConstraint("constraint patterns must be nonempty")

    removed: dict[int, str] = {}
    ordered = sorted(range(len(raw)), key=lambda i: (raw[i], i))
    for a, b in zip(ordered, ordered[1:]):
        if raw[a] == raw[b]:
            removed[b] = DUPLICATE

    unique = [i for i in range(len(raw)) if i not in removed]
    tree = keyword_tree([raw[i] for i in unique])
    for local in detect_superstrings(tree):
        removed[unique[local]] = SUPERSTRING

    kept = tuple(raw[i] for i in range(len(raw)) if i not in removed)
    report = tuple((raw[i], removed[i]) for i in sorted(removed))
    return ConstraintSet(kept, report)


@dataclass(frozen=True)
class ExclusionAutomaton:
    """Nonleaf keyword-tree states with a dense transition table.

    ``lam[k, col]`` holds the next state for the ``col``-th byte of
    ``alphabet``, or ``MATCH``.  Bytes outside ``alphabet`` always lead to
    state 0.
    """

    patterns: tuple[bytes, ...]
    labels: tuple[bytes, ...]
    pre: tuple[int, ...]
    goto: tuple[dict[int, int], ...]
    alphabet: bytes
    column: np.ndarray = field(repr=False)
    lam: np.ndarray = field(repr=False)

    @property
    def s(self) -> int:
        return len(self.labels)

    @property
    def depth(self) -> tuple[int, ...]:
        return tuple(len(label) for label in self.labels)

    @property
    def pattern_alphabet(self) -> frozenset[int]:
        return frozenset(self.alphabet)

    def state_of(self, label: bytes) -> int:
        return self.labels.index(label)

    def step(self, state: int, ch: int) -> int:
        col = self.column[ch]
        if col < 0:
            return 0
        return int(self.lam[state, col])

    def walk(self, state: int, ch: int) -> int:
        """Same as :meth:`step`, by following failure links instead of the table."""
        k = state
        while True:
            nxt = self.goto[k].get(ch)
            if nxt is not None:
                return nxt
            if k == 0:
                return 0
            k = self.pre[k]

    def sigma_string(self, s: bytes) -> int:
        k = 0
        for ch in s:
            k = self.step(k, ch)
            if k == MATCH:
                return MATCH
        return k

    def to_json(self) -> dict:
        from .textio import bytes_field

        states = []
        for k, label in enumerate(self.labels):
            row = {chr(c): int(self.lam[k, i]) for i, c in enumerate(self.alphabet)}
            states.append({"state": k, **bytes_field("label", label),
                           "pre": self.pre[k], "lambda": row})
        return {
            "patterns": [bytes_field("pattern", p) for p in self.patterns],
            "alphabet": [chr(c) for c in self.alphabet],
            "s": self.s,
            "match": MATCH,
            "states": states,
        }


def compute_lambda(tree: KeywordTree) -> ExclusionAutomaton:
    """Build the nonleaf-state automaton from a normalized, linked tree."""
    if tree.pre is None:
        raise ValueError("failure links not computed")
    nonleaf = [v for v in range(tree.t) if not tree.is_leaf(v) or v == 0]
    state = {v: k for k, v in enumerate(nonleaf)}
    pre = []
    for v in nonleaf:
        f = tree.pre[v]
        # a leaf on a nonleaf node's failure chain means a pattern sits
        # inside another one
        assert f in state, "failure link of a nonleaf node reaches a leaf"
        pre.append(state[f])

    goto = []
    for v in nonleaf:
        goto.append({ch: state.get(w, MATCH) for ch, w in tree.children[v].items()})

    alphabet = bytes(sorted({c for p in tree.patterns for c in p}))
    column = np.full(256, -1, dtype=np.int64)
    column[list(alphabet)] = np.arange(len(alphabet))
    lam = np.zeros((len(nonleaf), len(alphabet)), dtype=np.int32)
    # breadth-first so that lam[pre[k]] is final before row k reads it
    for v in bfs_order(tree):
        if v not in state:
            continue
        k = state[v]
        for col, ch in enumerate(alphabet):
            nxt = goto[k].get(ch)
            if nxt is not None:
                lam[k, col] = nxt
            elif k:
                lam[k, col] = lam[pre[k], col]
    lam.setflags(write=False)
    column.setflags(write=False)

    labels = tuple(tree.label(v) for v in nonleaf)
    return ExclusionAutomaton(tree.patterns, labels, tuple(pre), tuple(goto),
                              alphabet, column, lam)


def build_automaton(cs: ConstraintSet) -> ExclusionAutomaton:
    return compute_lambda(keyword_tree(cs))
