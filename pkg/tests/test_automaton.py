import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from exclcs import (MATCH, EmptyConstraint, build_automaton, build_tree, compute_failure,
                    detect_superstrings, keyword_tree, naive_sigma, normalize)
from exclcs.automaton import bfs_order

FIG1 = [b"aab", b"aba", b"ba"]

patterns_st = st.lists(st.binary(min_size=1, max_size=4).map(lambda b: bytes(c % 3 + 97 for c in b)),
                       max_size=5)


def naive_lp(label, all_labels):
    """Longest proper suffix of ``label`` that is itself a node label."""
    for size in range(len(label) - 1, 0, -1):
        if label[len(label) - size:] in all_labels:
            return label[len(label) - size:]
    return b""


def naive_superstrings(patterns):
    return {i for i, b in enumerate(patterns)
            if any(a != b and a in b for a in patterns)}


# --- normalize -------------------------------------------------------------

def test_normalize_figure_one():
    cs = normalize(FIG1)
    assert cs.patterns == (b"aab", b"ba")
    assert cs.removed == ((b"aba", "superstring"),)
    assert (cs.d, cs.r) == (2, 5)


def test_normalize_duplicate():
    cs = normalize([b"ab", b"ab"])
    assert cs.patterns == (b"ab",)
    assert cs.removed == ((b"ab", "duplicate"),)


def test_normalize_chain_of_overlaps():
    # pairwise check: "cd" in "bcd", nothing else nests
    assert naive_superstrings([b"abc", b"bcd", b"cd"]) == {1}
    cs = normalize([b"abc", b"bcd", b"cd"])
    assert cs.patterns == (b"abc", b"cd")
    assert cs.removed == ((b"bcd", "superstring"),)


def test_normalize_keeps_first_duplicate_and_flags_superstring_copies():
    cs = normalize([b"ba", b"aba", b"aba", b"ba"])
    assert cs.patterns == (b"ba",)
    assert cs.removed == ((b"aba", "superstring"), (b"aba", "duplicate"), (b"ba", "duplicate"))


def test_normalize_prefix_pattern_is_substring():
    cs = normalize([b"abc", b"ab"])
    assert cs.patterns == (b"ab",)


@pytest.mark.parametrize("raw", [[b""], [b"a", b""]])
def test_normalize_rejects_empty(raw):
    with pytest.raises(EmptyConstraint):
        normalize(raw)


@given(patterns_st)
def test_normalize_idempotent(raw):
    once = normalize(raw)
    twice = normalize(once.patterns)
    assert twice.patterns == once.patterns
    assert twice.removed == ()


@given(patterns_st)
def test_normalized_sets_satisfy_assumptions(raw):
    cs = normalize(raw)
    assert len(set(cs.patterns)) == cs.d
    assert naive_superstrings(list(cs.patterns)) == set()
    # every dropped pattern is redundant with respect to the kept ones
    for p, _ in cs.removed:
        assert any(q in p for q in cs.patterns)


# --- tree and failure links --------------------------------------------------

def test_tree_figure_one_preorder():
    tree = build_tree(FIG1)
    assert tree.t == 8
    labels = [tree.label(v) for v in range(tree.t)]
    assert labels == [b"", b"a", b"aa", b"aab", b"ab", b"aba", b"b", b"ba"]
    assert [v for v in range(tree.t) if tree.is_leaf(v)] == [3, 5, 7]


def test_tree_single_char():
    tree = build_tree([b"a"])
    assert tree.t == 2 and tree.is_leaf(1) and tree.label(1) == b"a"


def test_tree_normalized_figure_one():
    tree = build_tree([b"aab", b"ba"])
    prefixes = {p[:k] for p in (b"aab", b"ba") for k in range(1, len(p) + 1)}
    assert tree.t == 1 + len(prefixes) == 6
    nonleaf = [tree.label(v) for v in range(tree.t) if not tree.is_leaf(v)]
    assert nonleaf == [b"", b"a", b"aa", b"b"]


def test_failure_figure_one():
    tree = keyword_tree(FIG1)
    assert tree.pre[1:] == [0, 1, 4, 6, 7, 0, 1]


def test_failure_depth_one_goes_to_root():
    tree = keyword_tree([b"abc", b"bca", b"cab"])
    for ch, v in tree.children[0].items():
        assert tree.pre[v] == 0


@pytest.mark.parametrize("patterns", [[b"aab", b"ba"], FIG1, [b"abab", b"babb", b"bb"]])
def test_failure_matches_naive_scan(patterns):
    tree = keyword_tree(patterns)
    labels = {tree.label(v): v for v in range(tree.t)}
    for v in range(1, tree.t):
        assert tree.label(tree.pre[v]) == naive_lp(tree.label(v), labels)


@given(patterns_st)
def test_failure_minimality(raw):
    tree = keyword_tree(raw)
    labels = {tree.label(v) for v in range(tree.t)}
    for v in range(1, tree.t):
        lab, target = tree.label(v), tree.label(tree.pre[v])
        assert len(target) < len(lab) and lab.endswith(target)
        assert target == naive_lp(lab, labels)


def test_compute_failure_is_separate_step():
    tree = build_tree([b"ab"])
    assert tree.pre is None
    assert compute_failure(tree).pre == [0, 0, 0]


def test_bfs_order_nondecreasing_depth():
    tree = keyword_tree(FIG1)
    depths = [tree.depth[v] for v in bfs_order(tree)]
    assert depths == sorted(depths)


def test_tree_sigma_figure_one():
    tree = keyword_tree(FIG1)
    v = tree.sigma(b"aabaaabb")
    assert v == 6 and tree.label(v) == b"b"
    assert naive_sigma(b"aabaaabb", FIG1) == b"b"


# --- superstring detection ---------------------------------------------------

@pytest.mark.parametrize("patterns, expected", [
    (FIG1, {1}),
    ([b"a", b"b", b"c"], set()),
    ([b"xyx", b"yx", b"xy"], {0}),
])
def test_detect_superstrings(patterns, expected):
    assert naive_superstrings(patterns) == expected
    assert detect_superstrings(keyword_tree(patterns)) == expected


@settings(max_examples=300)
@given(patterns_st)
def test_detect_superstrings_matches_pairwise(raw):
    unique = list(dict.fromkeys(raw))
    assert detect_superstrings(keyword_tree(unique)) == naive_superstrings(unique)


# --- lambda / sigma -----------------------------------------------------------

@pytest.fixture
def small():
    return build_automaton(normalize([b"aab", b"ba"]))


def test_automaton_states(small):
    assert small.s == 4
    assert small.labels == (b"", b"a", b"aa", b"b")
    assert small.alphabet == b"ab"


def test_lambda_small(small):
    a, b = ord("a"), ord("b")
    assert small.step(2, b) == MATCH
    assert small.step(3, a) == MATCH
    expected = {(0, a): 1, (1, a): 2, (2, a): 2, (1, b): 3, (3, b): 3, (0, b): 3}
    for (k, ch), target in expected.items():
        assert small.step(k, ch) == target
        assert small.walk(k, ch) == target


def test_lambda_out_of_alphabet(small):
    for k in range(small.s):
        assert small.step(k, ord("z")) == 0
        assert small.walk(k, ord("z")) == 0


def test_lambda_table_immutable(small):
    with pytest.raises(ValueError):
        small.lam[0, 0] = 3


def test_sigma_string(small):
    assert small.sigma_string(b"") == 0
    assert small.sigma_string(b"abb") == 3
    assert small.sigma_string(b"aab") == MATCH
    assert naive_sigma(b"abb", [b"aab", b"ba"]) == b"b"


def expected_step(automaton, k, ch):
    label = naive_sigma(automaton.labels[k] + bytes([ch]), automaton.patterns)
    return MATCH if label in automaton.patterns else automaton.state_of(label)


@settings(max_examples=200)
@given(patterns_st)
def test_lambda_walk_naive_agree(raw):
    automaton = build_automaton(normalize(raw))
    for k in range(automaton.s):
        for ch in b"abcxyz":
            want = expected_step(automaton, k, ch)
            assert automaton.step(k, ch) == want
            assert automaton.walk(k, ch) == want


@settings(max_examples=200)
@given(patterns_st, st.binary(max_size=12).map(lambda b: bytes(c % 4 + 97 for c in b)))
def test_match_iff_contains_pattern(raw, text):
    cs = normalize(raw)
    automaton = build_automaton(cs)
    contains = any(p in text for p in cs.patterns)
    assert (automaton.sigma_string(text) == MATCH) == contains
    if not contains:
        assert automaton.labels[automaton.sigma_string(text)] == naive_sigma(text, cs.patterns)


def test_nonleaf_failure_never_reaches_leaf():
    rng = random.Random(3)
    for _ in range(100):
        raw = [bytes(rng.choice(b"ab") for _ in range(rng.randint(1, 4))) for _ in range(4)]
        tree = keyword_tree(normalize(raw))
        for v in range(tree.t):
            if tree.is_leaf(v):
                continue
            u = v
            while u:
                u = tree.pre[u]
                assert not tree.is_leaf(u) or u == 0


def test_empty_constraint_set_automaton():
    automaton = build_automaton(normalize([]))
    assert automaton.s == 1 and automaton.alphabet == b""
    assert automaton.sigma_string(b"anything") == 0


def test_json_dump_shape(small):
    doc = json.loads(json.dumps(small.to_json()))
    assert doc["s"] == 4 and doc["match"] == MATCH
    assert doc["alphabet"] == ["a", "b"]
    assert [st_["label"] for st_ in doc["states"]] == ["", "a", "aa", "b"]
    assert doc["states"][2]["lambda"] == {"a": 2, "b": MATCH}
    assert [st_["pre"] for st_ in doc["states"]] == [0, 0, 1, 0]


def test_json_dump_non_utf8_labels():
    automaton = build_automaton(normalize([b"\xff\xfe"]))
    doc = automaton.to_json()
    assert doc["states"][1]["label_hex"] == "ff"
    assert doc["patterns"][0]["pattern_hex"] == "fffe"
