"""Hot loops of the brute-force counter.

Two interchangeable backends count size-``q`` independent sets of an attack
graph whose first (lowest-index) square lies in ``[lo, hi)``:

* ``count_range_bits``: numba kernel, iterative backtracking over packed
  ``uint64`` successor bitsets.
* ``count_range_numpy``: fallback that recurses in Python and finishes the
  last two placements with a vectorised pair count on the adjacency matrix.

``count_range_lines`` is the same search with a faster finish: once two
pieces remain, the nonattacking pairs inside the available set ``S`` are
``C(|S|, 2) - sum_L C(|S & L|, 2)`` over the piece's lines ``L`` (distinct
squares attack iff they share exactly one such line).

All return ``(count, nodes, aborted)``. ``nodes`` counts interior search
nodes; with a positive ``node_budget`` the search stops once it is exceeded
and ``aborted`` is set.
"""

from __future__ import annotations

import numpy as np

from ._accel import njit

_M1 = np.uint64(0x5555555555555555)
_M2 = np.uint64(0x3333333333333333)
_M4 = np.uint64(0x0F0F0F0F0F0F0F0F)
_H01 = np.uint64(0x0101010101010101)
_ONE = np.uint64(1)
_ZERO = np.uint64(0)


@njit(cache=True, nogil=True)
def _popcount(x):
    x = x - ((x >> np.uint64(1)) & _M1)
    x = (x & _M2) + ((x >> np.uint64(2)) & _M2)
    x = (x + (x >> np.uint64(4))) & _M4
    return np.int64((x * _H01) >> np.uint64(56))


@njit(cache=True, nogil=True)
def _popcount_row(row):
    total = 0
    for w in range(row.shape[0]):
        total += _popcount(row[w])
    return total


@njit(cache=True, nogil=True)
def _next_bit(row, start):
    """Index of the lowest set bit >= start, or -1."""
    nw = row.shape[0]
    w = start >> 6
    if w >= nw:
        return -1
    x = row[w] & ~((_ONE << np.uint64(start & 63)) - _ONE)
    while True:
        if x != _ZERO:
            low = x & (~x + _ONE)
            return (w << 6) + _popcount(low - _ONE)
        w += 1
        if w >= nw:
            return -1
        x = row[w]


@njit(cache=True, nogil=True)
def count_range_bits(succ, q, lo, hi, node_budget):
    """Count q-subsets with first square in [lo, hi).

    ``succ[i]`` is the packed set of squares j > i that i does not attack.
    """
    nsq = succ.shape[0]
    nw = succ.shape[1]
    if hi > nsq:
        hi = nsq
    if q <= 0:
        return (np.int64(1) if lo <= 0 < max(hi, 1) else np.int64(0)), np.int64(0), False
    if q == 1:
        return np.int64(max(0, hi - lo)), np.int64(0), False
    avail = np.zeros((q, nw), dtype=np.uint64)
    cursor = np.zeros(q, dtype=np.int64)
    total = np.int64(0)
    nodes = np.int64(0)
    for first in range(max(lo, 0), hi):
        for w in range(nw):
            avail[1, w] = succ[first, w]
        cursor[1] = first + 1
        level = 1
        while level >= 1:
            rem = q - level
            if rem == 1:
                total += _popcount_row(avail[level])
                level -= 1
                continue
            i = _next_bit(avail[level], cursor[level])
            if i < 0:
                level -= 1
                continue
            cursor[level] = i + 1
            nodes += 1
            if node_budget > 0 and nodes > node_budget:
                return total, nodes, True
            nxt = level + 1
            for w in range(nw):
                avail[nxt, w] = avail[level, w] & succ[i, w]
            # too few squares left for the remaining pieces
            if rem > 2 and _popcount_row(avail[nxt]) < rem - 1:
                continue
            cursor[nxt] = i + 1
            level = nxt
    return total, nodes, False


@njit(cache=True, nogil=True)
def _pairs_by_lines(row, line_ptr, line_word, line_bits):
    s = _popcount_row(row)
    total = s * (s - 1) // 2
    for L in range(line_ptr.shape[0] - 1):
        k = 0
        for e in range(line_ptr[L], line_ptr[L + 1]):
            k += _popcount(row[line_word[e]] & line_bits[e])
        total -= k * (k - 1) // 2
    return total


@njit(cache=True, nogil=True)
def count_range_lines(succ, line_ptr, line_word, line_bits, q, lo, hi, node_budget):
    """As :func:`count_range_bits`, finishing the last two pieces by line counts.

    Lines are given in CSR form: entries ``line_ptr[L]:line_ptr[L+1]`` of
    ``line_word``/``line_bits`` are the (word index, bit mask) pairs of line L.
    Requires q >= 2.
    """
    nsq = succ.shape[0]
    nw = succ.shape[1]
    if hi > nsq:
        hi = nsq
    avail = np.zeros((q, nw), dtype=np.uint64)
    cursor = np.zeros(q, dtype=np.int64)
    total = np.int64(0)
    nodes = np.int64(0)
    if q == 2:
        for first in range(max(lo, 0), hi):
            total += _popcount_row(succ[first])
        return total, nodes, False
    for first in range(max(lo, 0), hi):
        for w in range(nw):
            avail[1, w] = succ[first, w]
        cursor[1] = first + 1
        level = 1
        while level >= 1:
            rem = q - level
            if rem == 2:
                total += _pairs_by_lines(avail[level], line_ptr, line_word, line_bits)
                level -= 1
                continue
            i = _next_bit(avail[level], cursor[level])
            if i < 0:
                level -= 1
                continue
            cursor[level] = i + 1
            nodes += 1
            if node_budget > 0 and nodes > node_budget:
                return total, nodes, True
            nxt = level + 1
            for w in range(nw):
                avail[nxt, w] = avail[level, w] & succ[i, w]
            if _popcount_row(avail[nxt]) < rem - 1:
                continue
            cursor[nxt] = i + 1
            level = nxt
    return total, nodes, False


def count_range_numpy(adj, q, lo, hi, node_budget=0):
    """Fallback counter on a boolean adjacency matrix (numpy only)."""
    nsq = adj.shape[0]
    hi = min(hi, nsq)
    if q <= 0:
        return (1 if lo <= 0 < max(hi, 1) else 0), 0, False
    if q == 1:
        return max(0, hi - lo), 0, False
    free = ~adj
    np.fill_diagonal(free, False)
    a8 = adj.astype(np.int64)
    state = {"nodes": 0, "aborted": False}

    def pairs(idx):
        # nonattacking unordered pairs inside idx
        k = idx.size
        if k < 2:
            return 0
        attacked = int(a8[np.ix_(idx, idx)].sum())
        return (k * (k - 1) - attacked) // 2

    def rec(idx, rem):
        if rem == 2:
            return pairs(idx)
        total = 0
        for pos, i in enumerate(idx):
            state["nodes"] += 1
            if node_budget and state["nodes"] > node_budget:
                state["aborted"] = True
                return total
            rest = idx[pos + 1:]
            child = rest[free[i, rest]]
            if child.size >= rem - 1:
                total += rec(child, rem - 1)
            if state["aborted"]:
                return total
        return total

    total = 0
    for first in range(max(lo, 0), hi):
        rest = np.arange(first + 1, nsq)
        child = rest[free[first, rest]]
        if q == 2:
            total += int(child.size)
        elif child.size >= q - 1:
            total += rec(child, q - 1)
        if state["aborted"]:
            break
    return total, state["nodes"], state["aborted"]
