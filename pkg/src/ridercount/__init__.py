"""Exact counts of nonattacking rider placements on the n x n board."""

from .closed import (
    a1_data,
    a_attacking_pairs,
    gamma_closed,
    one_move_closed,
    one_move_count_elementary,
    one_move_count_via_lines,
    u2_at_minus_one,
    u2_closed,
)
from .enumerator import count_diagonal_queen, count_nonattacking
from .lines import alpha_closed, beta_closed, line_multiset_closed, line_multiset_enumerated
from .model import Move, Piece, lambda_of, normalize_move, parse_piece
from .quasipoly import (
    Quasipolynomial,
    evaluate,
    fit_quasipolynomial,
    generating_function,
    minimal_period,
)

__version__ = "0.1.0"

__all__ = [
    "Move",
    "Piece",
    "Quasipolynomial",
    "a1_data",
    "a_attacking_pairs",
    "alpha_closed",
    "beta_closed",
    "count_diagonal_queen",
    "count_nonattacking",
    "evaluate",
    "fit_quasipolynomial",
    "gamma_closed",
    "generating_function",
    "lambda_of",
    "line_multiset_closed",
    "line_multiset_enumerated",
    "minimal_period",
    "normalize_move",
    "one_move_closed",
    "one_move_count_elementary",
    "one_move_count_via_lines",
    "parse_piece",
    "u2_at_minus_one",
    "u2_closed",
]
