"""Command-line interface: ``geodesic``, ``normalize``, ``verify``, ``bench``.

Exit codes: 0 success, 1 parse error, 2 invalid parameters, 3 verification
mismatch, 4 oracle capacity exceeded.
"""

from __future__ import annotations

import argparse
import csv
import itertools
import json
import random
import sys
import time
from typing import Callable, Iterable, Iterator, List, Optional, Sequence

from .normalizer import normalize
from .oracle import DEFAULT_BUDGET, CapacityExceeded, build_ball
from .search import GeodesicResult, geodesic
from .words import Letter, ParseError, Word, check_p, evaluate, format_word, invert_word, parse_word

EXIT_OK, EXIT_PARSE, EXIT_PARAMS, EXIT_MISMATCH, EXIT_CAPACITY = 0, 1, 2, 3, 4

LETTERS = (Letter.A_POS, Letter.A_NEG, Letter.T_POS, Letter.T_NEG)
# Letter weights for the biased generator: t three times as likely as t^-1.
BIASED_WEIGHTS = (2, 2, 3, 1)


def random_word(rng: random.Random, n: int, bias: bool = False) -> Word:
    if bias:
        return tuple(rng.choices(LETTERS, weights=BIASED_WEIGHTS, k=n))
    return tuple(rng.choices(LETTERS, k=n))


def all_words(max_len: int) -> Iterator[Word]:
    for n in range(max_len + 1):
        yield from itertools.product(LETTERS, repeat=n)


# -- verification ----------------------------------------------------------


class Mismatch(Exception):
    def __init__(self, word: Word, reason: str):
        super().__init__(f"{format_word(word) or '(empty)'}: {reason}")
        self.word = word
        self.reason = reason


def verify_words(words: Iterable[Word], p: int, radius: int,
                 search: Callable[[Word, int], GeodesicResult] = geodesic,
                 budget: int = DEFAULT_BUDGET) -> int:
    """Check each word's geodesic against the oracle; return the count.

    Raises :class:`Mismatch` at the first failure and
    :class:`~bsgeodesic.oracle.CapacityExceeded` if the ball is too big.
    """
    ball = build_ball(p, radius, budget)
    count = 0
    for w in words:
        g = evaluate(w, p)
        out = search(w, p).word
        if evaluate(out, p) != g:
            raise Mismatch(w, f"output {format_word(out)} represents a different element")
        d = ball.distance(g)
        if len(out) != d:
            raise Mismatch(w, f"output {format_word(out)} has length {len(out)}, distance is {d}")
        count += 1
    return count


# -- benchmark -------------------------------------------------------------


def run_bench(p: int, sizes: Sequence[int], trials: int = 5, seed: int = 0,
              bias: bool = False) -> List[dict]:
    rng = random.Random(seed)
    rows = []
    for n in sizes:
        times, visits = [], []
        for _ in range(trials):
            w = random_word(rng, n, bias)
            start = time.perf_counter()
            result = geodesic(w, p)
            times.append(time.perf_counter() - start)
            visits.append(result.visits)
        mean = sum(times) / len(times)
        rows.append({
            "size": n,
            "trials": trials,
            "mean_seconds": mean,
            "seconds_per_letter": mean / n if n else 0.0,
            "max_visits_per_letter": max(v / n for v in visits) if n else 0.0,
        })
    return rows


def adjacent_ratio(rows: Sequence[dict]) -> float:
    """Largest per-letter time ratio between consecutive sizes."""
    ratios = [b["seconds_per_letter"] / a["seconds_per_letter"]
              for a, b in zip(rows, rows[1:]) if a["seconds_per_letter"] > 0]
    return max(ratios, default=1.0)


# -- commands --------------------------------------------------------------


def _read_inputs(args) -> List[str]:
    if args.word is not None:
        return [args.word]
    if args.file == "-":
        text = sys.stdin.read()
    else:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def cmd_geodesic(args) -> int:
    try:
        words = [parse_word(line) for line in _read_inputs(args)]
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    for w in words:
        result = geodesic(w, args.p)
        if args.json:
            print(json.dumps(result.to_json()))
        else:
            print(f"{format_word(result.word)}\t{result.length}")
    return EXIT_OK


def cmd_normalize(args) -> int:
    try:
        w = parse_word(args.word)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    outcome = normalize(w, args.p)
    word = outcome.word()
    if outcome.inverted:
        word = invert_word(word)
    record = dict(outcome.canonical.to_json())
    record["word"] = format_word(word)
    record["inverted"] = outcome.inverted
    if args.json:
        print(json.dumps(record))
    else:
        print(format_word(word))
        print(f"k={record['k']} eps={record['eps']} m={record['m']} inverted={str(outcome.inverted).lower()}")
    return EXIT_OK


def cmd_verify(args, search: Callable[[Word, int], GeodesicResult] = geodesic) -> int:
    if args.random is not None:
        if args.len is None:
            print("--random needs --len", file=sys.stderr)
            return EXIT_PARAMS
        rng = random.Random(args.seed)
        words: Iterable[Word] = (random_word(rng, args.len) for _ in range(args.random))
        radius = args.len
    else:
        if args.max_len is None:
            print("give --max-len or --random with --len", file=sys.stderr)
            return EXIT_PARAMS
        words = all_words(args.max_len)
        radius = args.max_len
    try:
        count = verify_words(words, args.p, radius, search, args.budget)
    except CapacityExceeded as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except Mismatch as exc:
        print(f"mismatch: {exc}")
        return EXIT_MISMATCH
    print(f"{count} words checked, 0 mismatches")
    return EXIT_OK


def cmd_bench(args) -> int:
    rows = run_bench(args.p, args.sizes, args.trials, args.seed, args.bias)
    if args.csv:
        writer = csv.DictWriter(sys.stdout, fieldnames=list(rows[0]) if rows else ["size"])
        writer.writeheader()
        writer.writerows(rows)
    else:
        for r in rows:
            print(f"n={r['size']:>9}  mean={r['mean_seconds']:.4f}s  "
                  f"per-letter={r['seconds_per_letter'] * 1e6:.3f}us  "
                  f"visits/letter={r['max_visits_per_letter']:.2f}")
        print(f"max adjacent per-letter ratio: {adjacent_ratio(rows):.3f}")
    return EXIT_OK


# -- argument parsing --------------------------------------------------------


def _p_arg(text: str) -> int:
    try:
        return check_p(int(text))
    except ValueError:
        raise argparse.ArgumentTypeError(f"p must be an integer >= 2, got {text!r}") from None


def _nonneg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        value = -1
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {text!r}")
    return value


def _positive(text: str) -> int:
    value = _nonneg(text)
    if value == 0:
        raise argparse.ArgumentTypeError("expected a positive integer")
    return value


def _sizes(text: str) -> List[int]:
    return [_nonneg(part) for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bsgeodesic", description="Geodesics in the Baumslag-Solitar groups BS(1, p).")
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("geodesic", help="print a geodesic for each input word")
    g.add_argument("-p", type=_p_arg, required=True)
    src = g.add_mutually_exclusive_group(required=True)
    src.add_argument("--word")
    src.add_argument("--file")
    src.add_argument("-", dest="file", action="store_const", const="-", help="read standard input")
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_geodesic)

    n = sub.add_parser("normalize", help="print the canonical form of a word")
    n.add_argument("-p", type=_p_arg, required=True)
    n.add_argument("--word", required=True)
    n.add_argument("--json", action="store_true")
    n.set_defaults(func=cmd_normalize)

    v = sub.add_parser("verify", help="compare geodesics against breadth-first search")
    v.add_argument("-p", type=_p_arg, required=True)
    v.add_argument("--max-len", type=_nonneg)
    v.add_argument("--random", type=_nonneg)
    v.add_argument("--len", type=_nonneg)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--budget", type=_positive, default=DEFAULT_BUDGET)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="time geodesic on random words")
    b.add_argument("-p", type=_p_arg, required=True)
    b.add_argument("--sizes", type=_sizes, required=True)
    b.add_argument("--trials", type=_positive, default=5)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--bias", action="store_true", help="favour t over t^-1")
    b.add_argument("--csv", action="store_true")
    b.set_defaults(func=cmd_bench)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
