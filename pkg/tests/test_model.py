import pytest
from hypothesis import given, strategies as st

from ridercount.errors import EmptyPiece, ParallelMoves, ParseError, ZeroMove
from ridercount.model import BoardSize, Move, Piece, lambda_of, normalize_move, parse_piece


@pytest.mark.parametrize(
    "raw, want",
    [((2, 4), (1, 2)), ((-1, -2), (1, 2)), ((3, 0), (1, 0)), ((-3, 0), (1, 0)), ((1, -1), (-1, 1))],
)
def test_normalize_examples(raw, want):
    assert normalize_move(*raw) == Move(*want)


def test_zero_move_rejected():
    with pytest.raises(ZeroMove):
        normalize_move(0, 0)
    with pytest.raises(ParseError):
        parse_piece("0,0")


def test_move_constructor_validates():
    with pytest.raises(ValueError):
        Move(2, 4)
    with pytest.raises(ValueError):
        Move(1, -2)


nonzero = st.tuples(st.integers(-20, 20), st.integers(-20, 20)).filter(lambda t: t != (0, 0))


@given(nonzero, st.integers(1, 5))
def test_normalize_invariant_under_scaling_and_negation(v, k):
    m = normalize_move(*v)
    assert normalize_move(k * v[0], k * v[1]) == m
    assert normalize_move(-v[0], -v[1]) == m
    assert m.d > 0 or (m.d == 0 and m.c == 1)


@given(nonzero)
def test_hat_values(v):
    m = normalize_move(*v)
    assert m.chat == min(abs(m.c), abs(m.d))
    assert m.dhat == max(abs(m.c), abs(m.d)) >= 1


def test_aliases():
    assert len(parse_piece("Q")) == 4
    assert parse_piece("R").moves == {Move(1, 0), Move(0, 1)}
    assert parse_piece("B").moves == {Move(1, 1), Move(-1, 1)}
    assert parse_piece("N").moves == {Move(1, 2), Move(2, 1), Move(-1, 2), Move(-2, 1)}
    assert parse_piece("Q0011").moves == parse_piece("B").moves
    assert parse_piece(" 1, 2 ").moves == {Move(1, 2)}


@pytest.mark.parametrize("text", ["1,2;2,4", "1,0;-3,0", "1,1;-2,-2"])
def test_parallel_moves(text):
    with pytest.raises(ParallelMoves):
        parse_piece(text)


@pytest.mark.parametrize("text", ["", "   ", "Q0000"])
def test_empty_piece(text):
    with pytest.raises(EmptyPiece):
        parse_piece(text)


@pytest.mark.parametrize("text", ["1;2", "a,b", "1,2;", "1,2,3", "K", "Q;1,0"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_piece(text)


@pytest.mark.parametrize("text, lam", [("Q", 1), ("N", 2), ("1,2;1,3", 6), ("2,3", 3), ("R", 1)])
def test_lambda(text, lam):
    assert lambda_of(parse_piece(text)) == lam
    assert parse_piece(text).lam == lam


pieces = st.lists(nonzero, min_size=1, max_size=5).map(
    lambda vs: list({normalize_move(*v): v for v in vs}.values())
)


@given(pieces)
def test_canonical_roundtrip(vs):
    p = Piece.from_moves(vs)
    again = parse_piece(p.canonical())
    assert again.moves == p.moves
    assert again.canonical() == p.canonical()


def test_board_size():
    assert int(BoardSize(3)) == 3
    with pytest.raises(ValueError):
        BoardSize(-1)
