"""Line sizes for one slope on the n x n board, and the attack counts built on them.

Every quantity here is exact: integers or :class:`fractions.Fraction`.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .errors import NonIntegerResult
from .model import Move, MoveNormalized

__all__ = [
    "LineMultiset",
    "line_multiset_enumerated",
    "line_multiset_closed",
    "attack_power_sum",
    "alpha_closed",
    "beta_closed",
    "alpha_parts",
    "beta_parts",
    "as_normalized",
]


@dataclass(frozen=True)
class LineMultiset:
    """Line size -> number of lines of that size."""

    n: int
    move: Move | MoveNormalized
    entries: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(k): int(v) for k, v in self.entries.items() if k > 0 and v > 0}
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def total(self) -> int:
        return sum(l * m for l, m in self.entries.items())

    def sizes(self) -> list[int]:
        """All line sizes with repetition, ascending."""
        return [l for l, m in self.entries.items() for _ in range(m)]

    def power_sum(self, power: int) -> int:
        return sum(m * l**power for l, m in self.entries.items())

    def __eq__(self, other):
        if not isinstance(other, LineMultiset):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __hash__(self):
        return hash((self.n, tuple(self.entries.items())))


def as_normalized(move) -> MoveNormalized:
    if isinstance(move, MoveNormalized):
        return move
    if isinstance(move, Move):
        return move.normalized()
    c, d = move
    return MoveNormalized(min(abs(c), abs(d)), max(abs(c), abs(d)))


def _direction(move) -> tuple[int, int]:
    if isinstance(move, Move):
        return move.c, move.d
    if isinstance(move, MoveNormalized):
        return move.chat, move.dhat
    return tuple(move)


def line_multiset_enumerated(move, n: int) -> LineMultiset:
    """Group the squares by the line of the move's slope through them."""
    c, d = _direction(move)
    # squares (x, y) and (x', y') share a line iff d*x - c*y == d*x' - c*y'
    tally = Counter(d * x - c * y for x in range(1, n + 1) for y in range(1, n + 1))
    return LineMultiset(n, move, Counter(tally.values()))


def line_multiset_closed(move, n: int) -> LineMultiset:
    """Line-size multiplicities from the border-rectangle decomposition."""
    mv = as_normalized(move)
    if n <= 0:
        return LineMultiset(n, move, {})
    c, d = mv.chat, mv.dhat
    nbar = n % d
    delta = n // d
    rest = n - c * delta
    entries: Counter[int] = Counter()
    for l in range(1, delta):
        entries[l] += 2 * c * d
    entries[delta] += (d - nbar) * rest + c * (nbar + d)
    entries[delta + 1] += nbar * rest
    return LineMultiset(n, move, entries)


def attack_power_sum(move, n: int, power: int) -> int:
    if power < 1:
        raise ValueError("power must be >= 1")
    if n <= 0:
        return 0
    return line_multiset_closed(move, n).power_sum(power)


def _integral(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise NonIntegerResult(f"{what} evaluated to {value}")
    return value.numerator


def alpha_parts(move, nbar: int) -> tuple[list[Fraction], list[Fraction]]:
    """Invariant and periodic coefficient lists of the ordered-pair count.

    Both lists are ``[coef n^3, n^2, n^1, n^0]`` for residue ``nbar``.
    """
    mv = as_normalized(move)
    c, d = Fraction(mv.chat), Fraction(mv.dhat)
    inv = [(3 * d - c) / (3 * d * d), Fraction(0), c / 3, Fraction(0)]
    w = nbar * (d - nbar) / (d * d)
    per = [Fraction(0), Fraction(0), w * (d - c), -w * c * (d - 2 * nbar) / 3]
    return inv, per


def beta_parts(move, nbar: int) -> tuple[list[Fraction], list[Fraction]]:
    """Same as :func:`alpha_parts` for collinear triples, ``[n^4 .. n^0]``."""
    mv = as_normalized(move)
    c, d = Fraction(mv.chat), Fraction(mv.dhat)
    inv = [(2 * d - c) / (2 * d**3), Fraction(0), c / (2 * d), Fraction(0), Fraction(0)]
    w = nbar * (d - nbar) / d**3
    per = [
        Fraction(0),
        Fraction(0),
        w * 3 * (d - c),
        # + sign, as obtained by summing l^3 over the line-size table
        w * (d - 2 * c) * (d - 2 * nbar),
        w * 3 * c * nbar * (d - nbar) / 2,
    ]
    return inv, per


def _horner(coeffs, n) -> Fraction:
    acc = Fraction(0)
    for a in coeffs:
        acc = acc * n + a
    return acc


def alpha_closed(move, n: int) -> int:
    mv = as_normalized(move)
    inv, per = alpha_parts(mv, n % mv.dhat)
    return _integral(_horner(inv, n) + _horner(per, n), f"alpha{(mv.chat, mv.dhat)}({n})")


def beta_closed(move, n: int) -> int:
    mv = as_normalized(move)
    inv, per = beta_parts(mv, n % mv.dhat)
    return _integral(_horner(inv, n) + _horner(per, n), f"beta{(mv.chat, mv.dhat)}({n})")
