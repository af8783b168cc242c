"""Longest common subsequence of two byte strings avoiding forbidden substrings."""

from .automaton import (MATCH, ConstraintSet, ExclusionAutomaton, KeywordTree,
                        build_automaton, build_tree, compute_failure, compute_lambda,
                        detect_superstrings, keyword_tree, normalize)
from .errors import (EmptyConstraint, ExclcsError, InconsistentTable, InstanceError,
                     InstanceTooLarge)
from .oracle import (OracleResult, contains_any_substring, is_subsequence, naive_sigma,
                     oracle_lcs_excluding)
from .solver import (DPTable, SolveResult, SolveStats, backtrace, solve, solve_length_rolling,
                     solve_table, solve_table_naive)

__all__ = [
    "MATCH", "ConstraintSet", "ExclusionAutomaton", "KeywordTree", "build_automaton",
    "build_tree", "compute_failure", "compute_lambda", "detect_superstrings", "keyword_tree",
    "normalize", "EmptyConstraint", "ExclcsError", "InconsistentTable", "InstanceError",
    "InstanceTooLarge", "OracleResult", "contains_any_substring", "is_subsequence",
    "naive_sigma", "oracle_lcs_excluding", "DPTable", "SolveResult", "SolveStats", "backtrace",
    "solve", "solve_length_rolling", "solve_table", "solve_table_naive",
]
