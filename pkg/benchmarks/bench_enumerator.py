"""Compare the compiled and numpy counting backends.

    python3 benchmarks/bench_enumerator.py [--repeat 3] [--quick]

Each case is counted with both backends (and, under numba, with both the
plain and the line-count finish); the counts must agree.
"""

from __future__ import annotations

import argparse
import statistics
import time

from ridercount.enumerator import build_attack_graph, count_nonattacking
from ridercount.model import parse_piece

CASES = [
    ("Q", 3, 16),
    ("Q", 4, 10),
    ("N", 4, 9),
    ("1,2", 4, 9),
    ("Q", 5, 9),
]
QUICK = CASES[:2]


def _time(fn, repeat: int) -> tuple[float, int]:
    times, out = [], None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), out


def run(cases, repeat: int) -> list[dict]:
    # warm the JIT so compile time is not measured
    count_nonattacking(parse_piece("Q"), 3, 4, backend="numba", method="plain")
    count_nonattacking(parse_piece("Q"), 3, 4, backend="numba", method="lines")
    rows = []
    for text, q, n in cases:
        piece = parse_piece(text)
        g = build_attack_graph(piece, n)
        variants = {
            "numba-plain": dict(backend="numba", method="plain"),
            "numba-lines": dict(backend="numba", method="lines"),
            "numpy": dict(backend="numpy"),
        }
        row = {"piece": text, "q": q, "n": n}
        counts = set()
        for name, kw in variants.items():
            t, rec = _time(lambda: count_nonattacking(piece, q, n, graph=g, **kw), repeat)
            row[name] = t
            counts.add(rec.count)
        if len(counts) != 1:
            raise SystemExit(f"backends disagree on {text} q={q} n={n}: {counts}")
        row["count"] = counts.pop()
        rows.append(row)
    return rows


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true")
    args = ap.parse_args()
    rows = run(QUICK if args.quick else CASES, args.repeat)
    print(f"{'case':<14}{'count':>12}{'numba-plain':>14}{'numba-lines':>14}{'numpy':>12}{'speedup':>10}")
    for r in rows:
        case = f"{r['piece']} q={r['q']} n={r['n']}"
        best = min(r["numba-plain"], r["numba-lines"])
        print(
            f"{case:<14}{r['count']:>12}{r['numba-plain']:>13.4f}s{r['numba-lines']:>13.4f}s"
            f"{r['numpy']:>11.4f}s{r['numpy'] / best:>9.1f}x"
        )


if __name__ == "__main__":
    main()
