"""Slow, independent reference implementations used only by the tests.

Nothing here imports the package.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction


def attacks(a, b, moves) -> bool:
    dx, dy = b[0] - a[0], b[1] - a[1]
    if dx == 0 and dy == 0:
        return False
    return any(dx * d - dy * c == 0 for c, d in moves)


def naive_count(moves, q: int, n: int) -> int:
    """Count q-subsets of squares with no two on a common line."""
    squares = [(x, y) for x in range(1, n + 1) for y in range(1, n + 1)]
    total = 0
    for combo in itertools.combinations(squares, q):
        if all(not attacks(a, b, moves) for a, b in itertools.combinations(combo, 2)):
            total += 1
    return total


def walked_line_sizes(c: int, d: int, n: int) -> list[int]:
    """Sizes of the lines of direction (c, d), found by walking from each start."""
    g = math.gcd(c, d)
    c, d = c // g, d // g
    sizes = []
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            px, py = x - c, y - d
            if 1 <= px <= n and 1 <= py <= n:
                continue  # not the first square of its line
            k = 0
            while 1 <= x + k * c <= n and 1 <= y + k * d <= n:
                k += 1
            sizes.append(k)
    return sorted(sizes)


def permutation_queens(n: int) -> int:
    """Classical n-queens count by trying every column permutation."""
    total = 0
    for perm in itertools.permutations(range(n)):
        if len({r + perm[r] for r in range(n)}) == n and len({r - perm[r] for r in range(n)}) == n:
            total += 1
    return total


def lagrange(xs, ys, x) -> Fraction:
    """Value at x of the interpolating polynomial (Lagrange form)."""
    total = Fraction(0)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Fraction(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term *= Fraction(x - xj, xi - xj)
        total += term
    return total


def elementary(sizes, q: int) -> int:
    return sum(math.prod(c) for c in itertools.combinations(sizes, q))
