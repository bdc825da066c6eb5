"""Moves, pieces and board sizes.

A rider is described by a set of basic moves ``(c, d)``: reduced, nonzero
integer directions, no two parallel. Every move is stored in one canonical
orientation so that ``(c, d)`` and ``(-c, -d)`` are the same object.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import reduce
from typing import Iterable

from .errors import EmptyPiece, ParallelMoves, ParseError, ZeroMove

__all__ = [
    "Move",
    "MoveNormalized",
    "Piece",
    "BoardSize",
    "normalize_move",
    "parse_piece",
    "lambda_of",
    "NAMED_PIECES",
]


@dataclass(frozen=True, order=True)
class Move:
    c: int
    d: int

    def __post_init__(self):
        if self.c == 0 and self.d == 0:
            raise ZeroMove("(0,0) is not a move")
        if math.gcd(self.c, self.d) != 1:
            raise ValueError(f"move ({self.c},{self.d}) is not reduced")
        if not (self.d > 0 or (self.d == 0 and self.c == 1)):
            raise ValueError(f"move ({self.c},{self.d}) is not canonically oriented")

    @property
    def chat(self) -> int:
        return min(abs(self.c), abs(self.d))

    @property
    def dhat(self) -> int:
        return max(abs(self.c), abs(self.d))

    def normalized(self) -> MoveNormalized:
        return MoveNormalized(self.chat, self.dhat)

    def __str__(self) -> str:
        return f"{self.c},{self.d}"


@dataclass(frozen=True, order=True)
class MoveNormalized:
    """A move folded by the board's symmetries into ``0 <= chat <= dhat``."""

    chat: int
    dhat: int

    def __post_init__(self):
        if self.dhat < 1 or not 0 <= self.chat <= self.dhat:
            raise ValueError(f"bad normalized move ({self.chat},{self.dhat})")
        if self.chat == 0 and self.dhat != 1:
            raise ValueError("chat = 0 requires dhat = 1")
        if self.chat > 0 and math.gcd(self.chat, self.dhat) != 1:
            raise ValueError(f"({self.chat},{self.dhat}) is not reduced")


def normalize_move(cx: int, dy: int) -> Move:
    if cx == 0 and dy == 0:
        raise ZeroMove("(0,0) is not a move")
    g = math.gcd(cx, dy)
    c, d = cx // g, dy // g
    if d < 0 or (d == 0 and c < 0):
        c, d = -c, -d
    return Move(c, d)


@dataclass(frozen=True)
class BoardSize:
    n: int

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("board size must be >= 0")

    def __int__(self) -> int:
        return self.n


@dataclass(frozen=True)
class Piece:
    moves: frozenset[Move]
    name: str | None = None

    def __post_init__(self):
        if not self.moves:
            raise EmptyPiece("a piece needs at least one move")

    @classmethod
    def from_moves(cls, moves: Iterable[tuple[int, int] | Move], name=None) -> Piece:
        seen: dict[Move, tuple[int, int]] = {}
        for m in moves:
            raw = (m.c, m.d) if isinstance(m, Move) else tuple(m)
            mv = normalize_move(*raw)
            if mv in seen:
                raise ParallelMoves(f"moves {seen[mv]} and {raw} are parallel")
            seen[mv] = raw
        return cls(frozenset(seen), name)

    @property
    def sorted_moves(self) -> list[Move]:
        return sorted(self.moves, key=lambda m: (m.dhat, m.chat, m.d, m.c))

    @property
    def lam(self) -> int:
        return lambda_of(self)

    def __len__(self) -> int:
        return len(self.moves)

    def canonical(self) -> str:
        """Canonical text form: the alias for named pieces, else a move list."""
        for alias, moves in NAMED_PIECES.items():
            if self.moves == moves:
                return alias
        return ";".join(str(m) for m in self.sorted_moves)

    def __str__(self) -> str:
        return self.canonical()


def _moves(*pairs):
    return frozenset(normalize_move(c, d) for c, d in pairs)


# Fixed alias table. "Q<bits>" partial-queen codes select a subset of the
# queen's moves in the order (1,0), (0,1), (1,1), (1,-1).
_QUEEN_ORDER = ((1, 0), (0, 1), (1, 1), (1, -1))

NAMED_PIECES: dict[str, frozenset[Move]] = {
    "Q": _moves(*_QUEEN_ORDER),
    "R": _moves((1, 0), (0, 1)),
    "B": _moves((1, 1), (1, -1)),
    "N": _moves((1, 2), (2, 1), (1, -2), (2, -1)),
}

_MOVE_RE = re.compile(r"^([+-]?\d+),([+-]?\d+)$")
_PARTIAL_RE = re.compile(r"^Q([01]{4})$")


def parse_piece(text: str) -> Piece:
    """Parse ``NAME`` or ``c,d;c,d;...`` into a validated :class:`Piece`."""
    if not isinstance(text, str):
        raise ParseError(f"expected text, got {type(text).__name__}")
    s = "".join(text.split())
    if not s:
        raise EmptyPiece("empty piece text")
    if s in NAMED_PIECES:
        return Piece(NAMED_PIECES[s], s)
    m = _PARTIAL_RE.match(s)
    if m:
        chosen = [mv for bit, mv in zip(m.group(1), _QUEEN_ORDER) if bit == "1"]
        if not chosen:
            raise EmptyPiece(f"partial queen {s} selects no moves")
        return Piece.from_moves(chosen, name=s)
    pairs = []
    for part in s.split(";"):
        if not part:
            raise ParseError(f"empty move in {text!r}")
        mm = _MOVE_RE.match(part)
        if not mm:
            raise ParseError(f"cannot parse move {part!r} in {text!r}")
        c, d = int(mm.group(1)), int(mm.group(2))
        if c == 0 and d == 0:
            raise ParseError(f"zero move in {text!r}")
        pairs.append((c, d))
    return Piece.from_moves(pairs)


def lambda_of(piece: Piece) -> int:
    return reduce(math.lcm, (m.dhat for m in piece.moves), 1)
