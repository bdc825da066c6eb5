"""Explicit counting formulas.

Two pieces of any rider, the leading coefficients ``gamma_0..gamma_2`` of the
board count for any q, and the complete counts of one-move riders for
``q <= 4``. Every formula is evaluated in exact rationals; a closed form that
fails to produce an integer raises :class:`NonIntegerResult`.

Residues ``nbar = n mod dhat`` use the Euclidean remainder, so the formulas
can be evaluated at negative n (``n = -1`` gives ``nbar = dhat - 1``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .errors import NonIntegerResult, TypeCountMismatch, UnsupportedQ
from .lines import alpha_closed, as_normalized, line_multiset_closed
from .model import Move, Piece
from .quasipoly import Quasipolynomial, falling_factorial

__all__ = [
    "A1Data",
    "GammaClosed",
    "a_attacking_pairs",
    "u2_closed",
    "u2_at_minus_one",
    "a1_data",
    "gamma_closed",
    "one_move_closed",
    "one_move_count_via_lines",
    "one_move_count_elementary",
    "gamma3_periodic_one_move",
    "one_two_rider_quasipolynomial",
]


def _integral(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise NonIntegerResult(f"{what} evaluated to {x}")
    return int(x)


def _check_n(n: int) -> None:
    if n < 0:
        raise ValueError("n must be nonnegative")


def a_attacking_pairs(piece: Piece, n: int) -> int:
    """Ordered pairs of squares on a common line, self-pairs counted once."""
    _check_n(n)
    return sum(alpha_closed(m, n) for m in piece.moves) - (len(piece) - 1) * n * n


def _u2_value(piece: Piece, n: int) -> Fraction:
    total = Fraction(n**4, 2)
    for m in piece.moves:
        mv = m.normalized()
        c, d = Fraction(mv.chat), Fraction(mv.dhat)
        r = n % mv.dhat
        total -= (3 * d - c) / (6 * d * d) * n**3
        total -= c / 6 * n
        total -= Fraction(r * (d - r) * (d - c)) / (2 * d * d) * n
        # 1/6, as in -alpha/2; vanishes whenever dhat <= 2
        total += c * (d - r) * (d - 2 * r) * r / (6 * d * d)
    total += Fraction(len(piece) - 1, 2) * n * n
    return total


def u2_closed(piece: Piece, n: int) -> int:
    """Nonattacking placements of two identical pieces on the n x n board."""
    _check_n(n)
    return _integral(_u2_value(piece, n), f"u2({piece.canonical()}, {n})")


def u2_at_minus_one(piece: Piece) -> int:
    """The two-piece formula at n = -1, which counts the basic moves."""
    got = _integral(_u2_value(piece, -1), f"u2({piece.canonical()}, -1)")
    if got != len(piece):
        raise TypeCountMismatch(
            f"u2 at n=-1 gave {got}, expected {len(piece)}",
            expected=len(piece),
            actual=got,
            witness={"piece": piece.canonical(), "q": 2, "n": -1},
        )
    return got


@dataclass(frozen=True)
class A1Data:
    """``A1(n) = a10*n^3 + a12(n)*n + a13(n)``, the summed ordered-pair counts.

    ``a12`` and ``a13`` take n (any integer) and reduce it per move.
    """

    piece: Piece
    a10: Fraction

    def a12(self, n: int) -> Fraction:
        total = Fraction(0)
        for m in self.piece.moves:
            c, d = m.chat, m.dhat
            r = n % d
            total += Fraction(c * d * d + 3 * (d - c) * r * (d - r), 3 * d * d)
        return total

    def a13(self, n: int) -> Fraction:
        total = Fraction(0)
        for m in self.piece.moves:
            c, d = m.chat, m.dhat
            r = n % d
            total -= Fraction(c * r * (d - r) * (d - 2 * r), 3 * d * d)
        return total

    @property
    def period(self) -> int:
        return self.piece.lam

    def __call__(self, n: int) -> Fraction:
        return self.a10 * n**3 + self.a12(n) * n + self.a13(n)


def a1_data(piece: Piece) -> A1Data:
    a10 = sum((Fraction(3 * m.dhat - m.chat, 3 * m.dhat**2) for m in piece.moves), Fraction(0))
    return A1Data(piece, a10)


@dataclass(frozen=True)
class GammaClosed:
    """Known coefficients of ``u(q; n) = sum_i gamma_i n^(2q-i)``.

    ``q! * gamma_i = sum_kappa (q)_kappa * theta(i, kappa)``; :meth:`theta_i2`
    gives the ``(q)_2`` coefficient and :meth:`theta_top` the ``(q)_{2i}`` one.
    """

    piece: Piece
    q: int
    a1: A1Data
    b10: Fraction

    @property
    def gamma0(self) -> Fraction:
        return Fraction(1, math.factorial(self.q))

    @property
    def gamma1(self) -> Fraction:
        return -falling_factorial(self.q, 2) * self.a1.a10 / (2 * math.factorial(self.q))

    def theta_i2(self, i: int, n: int = 0) -> Fraction:
        """``(q)_2`` coefficient of ``q! * gamma_i``; periodic in n for i = 3, 4."""
        if i < 1:
            raise ValueError("i must be >= 1")
        if i == 1:
            return -self.a1.a10 / 2
        if i == 2:
            return Fraction(len(self.piece) - 1, 2)
        if i == 3:
            return -self.a1.a12(n) / 2
        if i == 4:
            return -self.a1.a13(n) / 2
        return Fraction(0)

    def theta_top(self, i: int) -> Fraction:
        """``(q)_{2i}`` coefficient of ``q! * gamma_i``."""
        if i < 0:
            raise ValueError("i must be >= 0")
        return (-self.a1.a10 / 2) ** i / math.factorial(i)


def gamma_closed(piece: Piece, q: int) -> GammaClosed:
    if q < 1:
        raise ValueError("q must be >= 1")
    b10 = sum((Fraction(2 * m.dhat - m.chat, 2 * m.dhat**3) for m in piece.moves), Fraction(0))
    return GammaClosed(piece, q, a1_data(piece), b10)


def _one_move_value(move, q: int, n: int) -> Fraction:
    mv = as_normalized(move)
    c, d = Fraction(mv.chat), Fraction(mv.dhat)
    r = n % mv.dhat
    w = r * (d - r)
    if q == 1:
        return Fraction(n * n)
    if q == 2:
        inv = n**4 + (c - 3 * d) / (3 * d * d) * n**3 - c / 3 * n
        per = (3 * (c - d) * n + c * (d - 2 * r)) * w / (6 * d * d)
        return inv / 2 + per
    if q == 3:
        inv = (
            n**6
            + (c - 3 * d) / d**2 * n**5
            - (c - 2 * d) / d**3 * n**4
            - c * n**3
            + c / d * n**2
        )
        per = (
            3 * d * (c - d) * n**3
            + (6 * d + c * d * d - 2 * c * d * r - 6 * c) * n**2
            + 2 * (d - 2 * c) * (d - 2 * r) * n
            + 3 * c * (d - r) * r
        )
        return inv / 6 + per * w / (6 * d**3)
    if q == 4:
        inv = (
            n**8
            + 2 * (c - 3 * d) / d**2 * n**7
            + (c * c - 18 * c * d + 33 * d * d) / (3 * d**4) * n**6
            + (18 * c - 30 * d - 10 * c * d**4) / (5 * d**4) * n**5
            + (18 * c * d - 2 * c * c) / (3 * d * d) * n**4
            - 4 * c / d**2 * n**3
            + c * c / 3 * n**2
            + 2 * c / 5 * n
        )
        # the r, r^2, r^3 terms of the linear coefficient carry the signs
        # obtained by summing the binomial line counts over the line-size table
        lin = (
            9 * c * d * d
            - 9 * d**3
            - c * c * d**3
            + (27 * d * d - 81 * c * d + 5 * c * c * d * d - 3 * c * d**3) * r
            - 9 * (3 * d + c * (c * d - d * d - 9)) * r**2
            - 6 * c * (d - c) * r**3
        )
        per = (
            90 * d * d * (c - d) * n**5
            + 30 * (c * c + 15 * d * d - 16 * c * d + c * d**3 - 2 * c * d * d * r) * n**4
            + 10
            * (6 * d * (-9 + 2 * d * (d - 2 * r)) + c * c * (d - 2 * r) + 27 * c * (2 - d * d + 2 * d * r))
            * n**3
            + 15
            * (
                2 * d * (-12 * d + c * (18 - c * d + d * d))
                + 3 * (-24 * c + (16 + c * c) * d + 2 * c * d * d + d**3) * r
                - 3 * (c + d) ** 2 * r**2
            )
            * n**2
            + 10 * lin * n
            + c * (d - 2 * r) * (d * d * (-6 + 5 * c * r) - 3 * d * r * (36 + 5 * c * r) + 2 * r * r * (54 + 5 * c * r))
        )
        return inv / 24 + per * w / (360 * d**4)
    raise UnsupportedQ(f"closed forms exist for q <= 4 only, got q={q}")


def one_move_closed(move, q: int, n: int) -> int:
    """Count for a rider with the single move ``move``; n may be negative."""
    if q < 1 or q > 4:
        raise UnsupportedQ(f"closed forms exist for 1 <= q <= 4, got q={q}")
    return _integral(_one_move_value(move, q, n), f"one-move {move} q={q} n={n}")


def _c2(x: int) -> int:
    return x * (x - 1) // 2


def one_move_count_via_lines(move, q: int, n: int) -> int:
    """Inclusion-exclusion over the lines of the move (q = 2, 3, 4)."""
    if q < 2 or q > 4:
        raise UnsupportedQ(f"line sums are given for 2 <= q <= 4, got q={q}")
    _check_n(n)
    sizes = line_multiset_closed(move, n).sizes()
    sq = n * n
    pairs = [_c2(l) for l in sizes]
    s2 = sum(pairs)
    if q == 2:
        return math.comb(sq, 2) - s2
    if q == 3:
        return math.comb(sq, 3) - sum(math.comb(l, 3) for l in sizes) - sum(
            p * (sq - l) for p, l in zip(pairs, sizes)
        )
    two_lines = (s2 * s2 - sum(p * p for p in pairs)) // 2
    return (
        math.comb(sq, 4)
        - sum(math.comb(l, 4) for l in sizes)
        - sum(math.comb(l, 3) * (sq - l) for l in sizes)
        - two_lines
        - sum(p * (math.comb(sq - l, 2) - s2 + p) for p, l in zip(pairs, sizes))
    )


def one_move_count_elementary(move, q: int, n: int) -> int:
    """Any q: at most one piece per line, so the count is e_q of the line sizes."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    _check_n(n)
    e = [1] + [0] * q
    for size in line_multiset_closed(move, n).sizes():
        for k in range(q, 0, -1):
            e[k] += e[k - 1] * size
    return e[q]


def gamma3_periodic_one_move(move, q: int) -> Callable[[int], Fraction]:
    """Residue-dependent part of the n^(2q-3) coefficient for a one-move rider."""
    if q < 2:
        raise ValueError("q must be >= 2")
    mv = as_normalized(move)
    c, d = mv.chat, mv.dhat
    scale = Fraction(1, math.factorial(q - 2))

    def periodic(nbar: int) -> Fraction:
        r = nbar % d
        return -scale * Fraction(r * (d - r) * (d - c), 2 * d * d)

    return periodic


# u(q; n) = A(n) + (-1)**n * B(n) for the rider with move (1, 2); descending
# coefficients of n**(2q) .. n**0
_ONE_TWO = {
    2: (
        ("1/2", "-5/24", "0", "-11/48", "0"),
        ("0", "0", "0", "1/16", "0"),
    ),
    3: (
        ("1/6", "-5/24", "1/16", "-11/48", "7/48", "0", "1/32"),
        ("0", "0", "0", "1/16", "-1/16", "0", "-1/32"),
    ),
    4: (
        ("1/24", "-5/48", "97/1152", "-131/960", "223/1152", "-17/192", "137/2304", "-73/1920", "0"),
        ("0", "0", "0", "1/32", "-29/384", "3/64", "-35/768", "7/128", "0"),
    ),
}


def one_two_rider_quasipolynomial(q: int) -> Quasipolynomial:
    """Known period-2 counts for the (1,2)-rider, q = 2, 3, 4."""
    if q not in _ONE_TWO:
        raise UnsupportedQ(f"no reference polynomial for q={q}")
    a, b = ([Fraction(x) for x in row] for row in _ONE_TWO[q])
    even = tuple(x + y for x, y in zip(a, b))
    odd = tuple(x - y for x, y in zip(a, b))
    return Quasipolynomial(2, 2 * q, (even, odd))
