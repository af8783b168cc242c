"""Command-line front end.

Exit codes: 0 success (or solver/oracle agreement), 1 disagreement,
2 runtime error, 64 usage error.
"""

from __future__ import annotations

import argparse
import csv
import json
import random
import statistics
import sys
import time
from pathlib import Path

from . import solver
from .automaton import build_automaton, normalize
from .errors import ExclcsError
from .generate import Instance, bench_patterns, letters, random_instance, random_string
from .oracle import oracle_lcs_excluding
from .textio import bytes_field, read_patterns, read_sequence

EXIT_OK = 0
EXIT_DISAGREE = 1
EXIT_ERROR = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _encode(arg: str) -> bytes:
    # round-trips the raw argv bytes on POSIX
    return arg.encode("utf-8", errors="surrogateescape")


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    gx = p.add_mutually_exclusive_group(required=True)
    gx.add_argument("--x", metavar="FILE", help="file holding sequence X")
    gx.add_argument("--x-str", metavar="S", help="sequence X given inline")
    gy = p.add_mutually_exclusive_group(required=True)
    gy.add_argument("--y", metavar="FILE", help="file holding sequence Y")
    gy.add_argument("--y-str", metavar="S", help="sequence Y given inline")
    p.add_argument("--constraints", metavar="FILE",
                   help="forbidden patterns, one per line")
    p.add_argument("--p-str", metavar="S", action="append", default=[],
                   help="forbidden pattern given inline (repeatable)")


def load_instance(args) -> Instance:
    X = read_sequence(args.x) if args.x is not None else _encode(args.x_str)
    Y = read_sequence(args.y) if args.y is not None else _encode(args.y_str)
    patterns = read_patterns(args.constraints) if args.constraints else []
    patterns += [_encode(p) for p in args.p_str]
    sources = [args.x or "inline", args.y or "inline"]
    if args.constraints:
        sources.append(args.constraints)
    return Instance(X, Y, patterns, source=",".join(sources))


def result_json(result: solver.SolveResult) -> dict:
    out = {}
    if result.lcs is None:
        out["lcs"] = None
    else:
        out.update(bytes_field("lcs", result.lcs))
    st = result.stats
    return {
        "length": result.length,
        **out,
        "terminal_state": result.terminal_state,
        "removed_constraints": [{**bytes_field("pattern", p), "reason": why}
                                for p, why in result.normalization],
        "n": st.n,
        "m": st.m,
        "d": st.d,
        "r": st.r,
        "s": st.s,
        "elapsed_ms": st.elapsed * 1000.0,
    }


def _dump(obj: dict, target: str) -> None:
    text = json.dumps(obj, indent=2, sort_keys=True)
    if target == "-":
        print(text, file=sys.stderr)
    else:
        Path(target).write_text(text + "\n")


def cmd_solve(args) -> int:
    inst = load_instance(args)
    if args.length_only and args.dump_table:
        raise UsageError("--dump-table needs the full table; drop --length-only")
    result = solver.solve(inst.X, inst.Y, inst.patterns, length_only=args.length_only)

    if args.dump_automaton or args.dump_table:
        automaton = build_automaton(normalize(inst.patterns))
        if args.dump_automaton:
            _dump(automaton.to_json(), args.dump_automaton)
        if args.dump_table:
            doc = automaton.to_json()
            table = solver.solve_table(inst.X, inst.Y, automaton)
            doc["f"] = table.f.tolist()
            _dump(doc, args.dump_table)

    if args.json:
        print(json.dumps(result_json(result)))
    else:
        out = sys.stdout
        out.write(f"length: {result.length}\n")
        if result.lcs is not None:
            out.flush()
            out.buffer.write(b"lcs: " + result.lcs + b"\n")
            out.buffer.flush()
        for p, why in result.normalization:
            out.write(f"removed: {p.decode('utf-8', errors='replace')} ({why})\n")
    return EXIT_OK


def cmd_oracle(args) -> int:
    inst = load_instance(args)
    got = solver.solve(inst.X, inst.Y, inst.patterns, length_only=True)
    expected = oracle_lcs_excluding(inst.X, inst.Y, inst.patterns)
    agree = got.length == expected.length
    verdict = "AGREE" if agree else "DISAGREE"
    print(f"solver: {got.length}, oracle: {expected.length}, {verdict}")
    return EXIT_OK if agree else EXIT_DISAGREE


def cmd_gen(args) -> int:
    if min(args.n, args.m, args.num_patterns) < 0 or args.max_pattern_len < 1:
        raise UsageError("sizes must be nonnegative and --max-pattern-len at least 1")
    try:
        letters(args.alphabet)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    inst = random_instance(random.Random(args.seed), args.n, args.m, args.alphabet,
                           args.num_patterns, args.max_pattern_len)
    prefix = args.out_prefix
    Path(f"{prefix}.x").write_bytes(inst.X)
    Path(f"{prefix}.y").write_bytes(inst.Y)
    Path(f"{prefix}.constraints").write_bytes(b"".join(p + b"\n" for p in inst.patterns))
    print(f"wrote {prefix}.x {prefix}.y {prefix}.constraints")
    return EXIT_OK


def parse_sizes(text: str) -> list[tuple[int, int]]:
    sizes = []
    for item in filter(None, (t.strip() for t in text.split(","))):
        try:
            n, m = (int(v) for v in item.lower().split("x"))
        except ValueError:
            raise UsageError(f"bad size {item!r}; expected NxM") from None
        if n < 0 or m < 0:
            raise UsageError(f"bad size {item!r}; sizes must be nonnegative")
        sizes.append((n, m))
    return sizes


def parse_ints(text: str) -> list[int]:
    try:
        values = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None
    if any(v < 0 for v in values):
        raise UsageError("values must be nonnegative")
    return values


def bench_rows(sizes, rs, seed: int, repeats: int = 5, alphabet: int = 4):
    """Yield ``(n, m, r, s, elapsed_ms)``, the median over ``repeats`` solves.

    Patterns depend only on ``(seed, r)`` and sequences only on
    ``(seed, n, m)``, so rows sharing a parameter share its data.
    """
    sigma = letters(alphabet)
    # compile the DP kernel outside the timed region
    solver.solve_length_rolling(b"ab", b"ab", build_automaton(normalize([b"b"])))
    for r in rs:
        patterns = bench_patterns(random.Random(f"{seed}:p:{r}"), r, sigma)
        automaton = build_automaton(normalize(patterns))
        for n, m in sizes:
            rng = random.Random(f"{seed}:x:{n}:{m}")
            X = random_string(rng, n, sigma)
            Y = random_string(rng, m, sigma)
            times = []
            for _ in range(repeats):
                start = time.perf_counter()
                solver.solve_length_rolling(X, Y, automaton)
                times.append(time.perf_counter() - start)
            yield n, m, r, automaton.s, statistics.median(times) * 1000.0


def cmd_bench(args) -> int:
    sizes = parse_sizes(args.sizes)
    rs = parse_ints(args.r)
    if args.repeats < 1:
        raise UsageError("--repeats must be at least 1")
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["n", "m", "r", "s", "elapsed_ms"])
    for n, m, r, s, ms in bench_rows(sizes, rs, args.seed, args.repeats):
        writer.writerow([n, m, r, s, f"{ms:.3f}"])
        sys.stdout.flush()
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="exclcs",
                     description="Longest common subsequence avoiding forbidden substrings.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve one instance")
    _add_instance_args(p)
    p.add_argument("--length-only", action="store_true",
                   help="skip the witness; uses O(m*s) memory")
    p.add_argument("--json", action="store_true", help="emit one JSON object")
    p.add_argument("--dump-automaton", nargs="?", const="-", metavar="PATH",
                   help="write the automaton as JSON to PATH (stderr if omitted)")
    p.add_argument("--dump-table", metavar="PATH",
                   help="write automaton plus full DP cube as JSON (unstable format)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("oracle", help="compare the solver with brute force")
    _add_instance_args(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("gen", help="write a random instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--alphabet", type=int, default=4, metavar="SIZE")
    p.add_argument("--num-patterns", type=int, default=2)
    p.add_argument("--max-pattern-len", type=int, default=3)
    p.add_argument("--out-prefix", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time the solver over a grid of sizes")
    p.add_argument("--sizes", default="", help="comma-separated NxM pairs, e.g. 500x500,1000x500")
    p.add_argument("--r", default="32", help="comma-separated total pattern lengths")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--repeats", type=int, default=5)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"exclcs: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ExclcsError as exc:
        print(f"exclcs: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"exclcs: cannot read input: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
