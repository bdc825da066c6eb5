"""Brute-force ground truth: nonattacking placements counted square by square.

Squares are indexed row-major, ``index = (y - 1) * n + (x - 1)`` with ``x`` the
column and ``y`` the row, both in ``1..n``.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import kernels
from ._accel import numba_enabled
from .errors import ResourceLimit
from .model import Piece

__all__ = [
    "AttackGraph",
    "CountRecord",
    "build_attack_graph",
    "count_nonattacking",
    "count_diagonal_queen",
    "DIAGONAL_QUEEN_MAX",
]

DIAGONAL_QUEEN_MAX = 10

# int64 accumulators in the compiled kernel are safe below this bound
_INT64_SAFE = 2**62


@dataclass(frozen=True)
class CountRecord:
    piece: str
    q: int
    n: int
    count: int

    def __post_init__(self):
        if self.count < 0:
            raise ValueError("count must be nonnegative")

    @property
    def key(self) -> tuple[str, int, int]:
        return (self.piece, self.q, self.n)

    @property
    def labelled(self) -> int:
        """Configurations of distinguishable copies, q! times the count."""
        return math.factorial(self.q) * self.count


@dataclass(frozen=True, eq=False)
class AttackGraph:
    n: int
    piece: Piece
    adjacency: np.ndarray  # (n*n, n*n) bool, symmetric, zero diagonal

    @property
    def num_squares(self) -> int:
        return self.n * self.n

    def square(self, index: int) -> tuple[int, int]:
        y, x = divmod(index, self.n)
        return x + 1, y + 1

    def index(self, x: int, y: int) -> int:
        return (y - 1) * self.n + (x - 1)

    def attacks(self, i: int, j: int) -> bool:
        return bool(self.adjacency[i, j])

    def edges(self) -> list[tuple[int, int]]:
        ii, jj = np.nonzero(np.triu(self.adjacency, 1))
        return list(zip(ii.tolist(), jj.tolist()))

    def successor_bits(self) -> np.ndarray:
        """Packed uint64 rows: bit j of row i set iff j > i and i, j do not attack."""
        nsq = self.num_squares
        ok = ~self.adjacency & np.triu(np.ones((nsq, nsq), dtype=bool), 1)
        nw = max(1, (nsq + 63) // 64)
        padded = np.zeros((nsq, nw * 64), dtype=bool)
        padded[:, :nsq] = ok
        packed = np.packbits(padded, axis=1, bitorder="little")
        return np.ascontiguousarray(packed).view("<u8").astype(np.uint64)

    def line_csr(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Lines with at least two squares as CSR arrays (ptr, word, bits)."""
        n = self.n
        ptr, words, bits = [0], [], []
        for m in self.piece.sorted_moves:
            groups: dict[int, list[int]] = {}
            for idx in range(n * n):
                y, x = divmod(idx, n)
                groups.setdefault(m.d * x - m.c * y, []).append(idx)
            for key in sorted(groups):
                members = groups[key]
                if len(members) < 2:
                    continue
                by_word: dict[int, int] = {}
                for idx in members:
                    by_word[idx >> 6] = by_word.get(idx >> 6, 0) | (1 << (idx & 63))
                for w in sorted(by_word):
                    words.append(w)
                    bits.append(by_word[w])
                ptr.append(len(words))
        return (
            np.asarray(ptr, dtype=np.int64),
            np.asarray(words, dtype=np.int64),
            np.asarray(bits, dtype=np.uint64),
        )


def build_attack_graph(piece: Piece, n: int) -> AttackGraph:
    nsq = n * n
    adj = np.zeros((nsq, nsq), dtype=bool)
    if n > 0:
        ys, xs = np.divmod(np.arange(nsq), n)
        for m in piece.moves:
            for k in range(1, n):
                dx, dy = k * m.c, k * m.d
                tx, ty = xs + dx, ys + dy
                ok = (tx >= 0) & (tx < n) & (ty >= 0) & (ty < n)
                if not ok.any():
                    break
                src = np.nonzero(ok)[0]
                dst = ty[ok] * n + tx[ok]
                adj[src, dst] = True
                adj[dst, src] = True
    return AttackGraph(n, piece, adj)


def _chunks(nsq: int, threads: int) -> list[tuple[int, int]]:
    # single squares: work per first square is very uneven
    if threads <= 1:
        return [(0, nsq)]
    return [(i, i + 1) for i in range(nsq)]


def count_nonattacking(
    piece: Piece,
    q: int,
    n: int,
    *,
    node_budget: int = 0,
    threads: int = 1,
    backend: str | None = None,
    method: str = "auto",
    graph: AttackGraph | None = None,
) -> CountRecord:
    """Exact number of ways to place q identical copies with no two attacking.

    ``backend`` is ``"numba"``, ``"numpy"`` or ``None`` (choose from the
    environment). With numba, ``method`` picks the plain backtracking kernel
    (``"plain"``) or the line-count finish (``"lines"``); ``"auto"`` uses
    lines for q >= 3. A positive ``node_budget`` bounds the search; exceeding it
    raises :class:`ResourceLimit` rather than returning a partial count.
    """
    if q < 0 or n < 0:
        raise ValueError("q and n must be nonnegative")
    label = piece.canonical()
    nsq = n * n
    if q == 0:
        return CountRecord(label, q, n, 1)
    if q > nsq:
        return CountRecord(label, q, n, 0)
    if q == 1:
        return CountRecord(label, q, n, nsq)

    if backend is None:
        backend = "numba" if numba_enabled() else "numpy"
    if backend not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "numba" and math.comb(nsq, q) >= _INT64_SAFE:
        backend = "numpy"

    g = graph if graph is not None else build_attack_graph(piece, n)
    if method == "auto":
        method = "lines" if q >= 3 else "plain"
    if method not in ("plain", "lines"):
        raise ValueError(f"unknown method {method!r}")
    if backend == "numba":
        succ = g.successor_bits()
        if method == "lines":
            csr = g.line_csr()

            def run(lo, hi):
                return kernels.count_range_lines(succ, *csr, q, lo, hi, node_budget)
        else:

            def run(lo, hi):
                return kernels.count_range_bits(succ, q, lo, hi, node_budget)
    else:
        adj = g.adjacency

        def run(lo, hi):
            return kernels.count_range_numpy(adj, q, lo, hi, node_budget)

    def work(span):
        c, nodes, aborted = run(*span)
        return int(c), int(nodes), bool(aborted)

    spans = _chunks(nsq, threads)
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, spans))
    else:
        results = [work(s) for s in spans]

    total = sum(r[0] for r in results)
    nodes = sum(r[1] for r in results)
    if any(r[2] for r in results) or (node_budget and nodes > node_budget):
        raise ResourceLimit(
            f"node budget {node_budget} exceeded counting {label} q={q} n={n}"
        )
    return CountRecord(label, q, n, total)


def count_diagonal_queen(n: int, max_n: int = DIAGONAL_QUEEN_MAX) -> CountRecord:
    """n nonattacking queens on the n x n board, one queen per row."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > max_n:
        raise ResourceLimit(f"n={n} exceeds the configured maximum {max_n}")
    full = (1 << n) - 1

    def place(cols, diag, anti):
        if cols == full:
            return 1
        total = 0
        free = full & ~(cols | diag | anti)
        while free:
            bit = free & -free
            free ^= bit
            total += place(cols | bit, ((diag | bit) << 1) & full, (anti | bit) >> 1)
        return total

    return CountRecord("Q", n, n, place(0, 0, 0))
