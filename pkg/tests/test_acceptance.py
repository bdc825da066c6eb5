"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS``/``FAIL`` line (also repeated in the
terminal summary) and asserts its time limit.
"""

import contextlib
import math
import time
from fractions import Fraction

import pytest

from conftest import ACCEPTANCE_LINES
from oracles import permutation_queens
from ridercount import analysis
from ridercount.cache import bundled_counts
from ridercount.closed import (
    a1_data,
    one_move_closed,
    one_move_count_elementary,
    one_move_count_via_lines,
    one_two_rider_quasipolynomial,
    u2_closed,
)
from ridercount.enumerator import count_diagonal_queen, count_nonattacking
from ridercount.errors import InsufficientData
from ridercount.lines import alpha_closed, beta_closed, line_multiset_closed, line_multiset_enumerated
from ridercount.model import Move, Piece, parse_piece
from ridercount.quasipoly import (
    fit_quasipolynomial,
    generating_function,
    minimal_period,
    parity_check,
)

TWO_PIECE = ["Q", "R", "B", "N", "1,2", "1,3", "2,3", "1,2;2,1"]
ONE_MOVES = [Move(c, d) for d in range(1, 6) for c in range(0, d + 1) if math.gcd(c, d) == 1]


def _sweep_moves(dmax):
    out = []
    for d in range(0, dmax + 1):
        for c in range(-dmax, dmax + 1):
            if math.gcd(c, d) == 1 and (d > 0 or c == 1):
                out.append(Move(c, d))
    return out


@contextlib.contextmanager
def criterion(k, title, limit):
    t0 = time.perf_counter()
    info = {}
    try:
        yield info
    except BaseException as exc:
        line = f"FAIL criterion {k}: {title} ({time.perf_counter() - t0:.2f}s) {type(exc).__name__}: {exc}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    elapsed = time.perf_counter() - t0
    ok = elapsed < limit
    note = f" [{info['note']}]" if "note" in info else ""
    line = f"{'PASS' if ok else 'FAIL'} criterion {k}: {title} ({elapsed:.2f}s, limit {limit}s){note}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def _one(move):
    return Piece.from_moves([move])


def _e_counter(piece, q, n):
    (m,) = piece.moves
    return one_move_count_elementary(m, q, n)


def test_criterion_01_line_multisets():
    with criterion(1, "closed line multiset equals enumeration, d<=6, n<=30", 5) as info:
        moves = _sweep_moves(6)
        for m in moves:
            for n in range(1, 31):
                assert line_multiset_closed(m, n) == line_multiset_enumerated(m, n), (m, n)
        info["note"] = f"{len(moves)} moves"


def test_criterion_02_alpha_beta():
    with criterion(2, "alpha/beta closed forms equal power sums, spot values", 5):
        for m in _sweep_moves(6):
            for n in range(1, 31):
                lines = line_multiset_enumerated(m, n)
                assert alpha_closed(m, n) == lines.power_sum(2), (m, n)
                assert beta_closed(m, n) == lines.power_sum(3), (m, n)
        assert alpha_closed(Move(1, 2), 3) == 13
        assert beta_closed(Move(1, 2), 3) == 21
        assert alpha_closed(Move(1, 1), 3) == 19
        assert beta_closed(Move(1, 1), 2) == 10


def test_criterion_03_two_piece():
    with criterion(3, "two-piece closed form equals brute force, period equals lambda", 60) as info:
        periods = {}
        for text in TWO_PIECE:
            P = parse_piece(text)
            for n in range(0, 13):
                assert u2_closed(P, n) == count_nonattacking(P, 2, n).count, (text, n)
            data = {n: count_nonattacking(P, 2, n).count for n in range(0, 6 * P.lam + 2)}
            periods[text] = minimal_period(data, 4, 2 * P.lam)
            assert periods[text] == P.lam, (text, periods[text])
        info["note"] = " ".join(f"{t}:{p}" for t, p in periods.items())


def test_criterion_04_type_counts():
    with criterion(4, "fitted count at n=-1 equals move count (q=2) and 1 (one move, q=2..4)", 60):
        for text in TWO_PIECE:
            P = parse_piece(text)
            data = {n: count_nonattacking(P, 2, n).count for n in range(0, 6 * P.lam + 2)}
            fit = analysis.fit_counts(data, 4, P.lam)
            assert fit(-1) == len(P), text
        for m in ONE_MOVES:
            for q in (2, 3, 4):
                data = {n: one_move_count_elementary(m, q, n) for n in range((2 * q + 3) * m.dhat)}
                fit = analysis.fit_counts(data, 2 * q, m.dhat)
                assert fit(-1) == 1, (m, q)


def test_criterion_05_one_move():
    with criterion(5, "one-move closed form = line sums = brute force; (1,2) fits match reference", 600):
        for m in ONE_MOVES:
            P = _one(m)
            for q in (2, 3, 4):
                for n in range(0, 13):
                    brute = count_nonattacking(P, q, n).count
                    assert one_move_closed(m, q, n) == brute, (m, q, n)
                    assert one_move_count_via_lines(m, q, n) == brute, (m, q, n)
        R = parse_piece("1,2")
        for q in (2, 3, 4):
            data = {n: count_nonattacking(R, q, n).count for n in range(0, 2 * (2 * q + 3))}
            fit = analysis.fit_counts(data, 2 * q, 2)
            ref = one_two_rider_quasipolynomial(q)
            for r in (0, 1):
                assert fit.constituent(r) == ref.constituent(r), (q, r)


def test_criterion_06_gamma():
    with criterion(6, "gamma0, gamma1, gamma2 constancy, one-move gamma3 periodic part", 120) as info:
        reports = []
        brute = analysis.BruteCounter()
        for text in TWO_PIECE:
            P = parse_piece(text)
            reports.append(analysis.verify_gamma_theorem(P, 2, 6 * P.lam + 2, brute))
        Q = parse_piece("Q")
        reports.append(analysis.verify_gamma_theorem(Q, 3, 22, brute, period_bound=2))
        for m in ONE_MOVES:
            for q in (2, 3, 4):
                n_max = (2 * q + 3) * m.dhat
                reports.append(analysis.verify_gamma_theorem(_one(m), q, n_max, _e_counter, period_bound=m.dhat))
        R = parse_piece("1,2")
        for q in (2, 3, 4):
            reports.append(analysis.verify_gamma_theorem(
                R, q, 2 * (2 * q + 3), brute, period_bound=2, expected=one_two_rider_quasipolynomial(q)
            ))
        bad = [r.to_json() for r in reports if r.verdict != "pass"]
        assert not bad, bad
        info["note"] = f"{len(reports)} fits"


def test_criterion_07_parity():
    with criterion(7, "alpha/beta fits odd/even, second-leading coefficient zero", 30):
        report = analysis.verify_parity_theorem(_sweep_moves(5), 2 * 5 * 5 + 5)
        assert report.verdict == "pass", report.to_json()
        for m in ONE_MOVES:
            d = m.dhat
            for fn, dim in ((alpha_closed, 3), (beta_closed, 4)):
                fit = fit_quasipolynomial({n: fn(m, n) for n in range(0, (dim + 3) * d)}, dim, d, validate=True)
                assert parity_check(fit, dim)
                assert all(x == 0 for x in fit.coefficient_values(dim - 1))


def test_criterion_08_nqueens():
    with criterion(8, "n-queens counts 1,0,0,2,10,4,40 and 92", 10):
        got = [count_diagonal_queen(n).count for n in range(1, 9)]
        oracle = [permutation_queens(n) for n in range(1, 9)]
        assert got == oracle == [1, 0, 0, 2, 10, 4, 40, 92]


def test_criterion_09_generating_functions():
    with criterion(9, "rational GF series reproduces counts, queen q=2 length 5, reductions flagged", 10) as info:
        cases = []
        for text in TWO_PIECE:
            P = parse_piece(text)
            data = {n: count_nonattacking(P, 2, n).count for n in range(0, 6 * P.lam + 2)}
            cases.append((P, 2, data))
        Q = parse_piece("Q")
        cases.append((Q, 3, {n: count_nonattacking(Q, 3, n).count for n in range(0, 23)}))
        for m in ONE_MOVES:
            for q in (3, 4):
                cases.append((_one(m), q, {n: one_move_count_elementary(m, q, n) for n in range((2 * q + 3) * m.dhat)}))
        lengths = {}
        for P, q, data in cases:
            fit = analysis.fit_counts(data, 2 * q, 2 * P.lam)
            report = analysis.recurrence_report(P, q, fit, data)
            assert report.verdict == "pass", report.to_json()
            gf = generating_function(fit)
            assert gf.series(max(data) + 1) == [data[n] for n in range(max(data) + 1)]
            assert gf.reduced == (gf.recurrence_length < gf.naive_length)
            assert report.summary["reduced"] == gf.reduced
            lengths[(P.canonical(), q)] = (gf.naive_length, gf.recurrence_length)
        assert lengths[("Q", 2)][1] == 5
        assert lengths[("N", 2)] == (10, 7)
        info["note"] = f"{len(cases)} fits, {sum(a > b for a, b in lengths.values())} reduced"


def test_criterion_10_falling_factorial():
    with criterion(10, "theta(1,2), theta(2,2), theta(2,4) for queen and (1,2)-rider", 600) as info:
        notes = []

        # queen: components W_kappa from counts over q; the bundled counts
        # (q <= 4, n <= 47) are spot-checked against live brute force
        Q = parse_piece("Q")
        store = bundled_counts()
        for q in range(0, 5):
            for n in range(0, 11):
                assert store.get(Q, q, n) == count_nonattacking(Q, q, n).count, (q, n)
        counts = {q: {n: store.get(Q, q, n) for n in range(48)} for q in range(5)}
        a10 = a1_data(Q).a10
        assert analysis.theta_from_components(counts, 1, 2, 1) == [-a10 / 2]
        assert analysis.theta_from_components(counts, 2, 2, 1) == [Fraction(len(Q) - 1, 2)]
        assert set(analysis.theta_from_components(counts, 2, 4, 6)) == {(a10 / 2) ** 2 / 2}
        q5 = {n: count_nonattacking(Q, 5, n).count for n in range(0, 15)}
        with pytest.raises(InsufficientData):
            analysis.fit_counts(q5, 10, 6)
        notes.append("queen q=5 n<=14 too short to fit")

        # (1,2)-rider: per-q fits for q = 2..5; elementary counts extend the
        # range and are checked against brute force up to n = 14
        R = parse_piece("1,2")
        (m,) = R.moves
        fits = {}
        for q in range(2, 6):
            for n in range(0, 15):
                assert one_move_count_elementary(m, q, n) == count_nonattacking(R, q, n).count, (q, n)
            vals = {n: one_move_count_elementary(m, q, n) for n in range(2 * (2 * q + 3))}
            fits[q] = analysis.fit_counts(vals, 2 * q, 2)
        a10 = a1_data(R).a10
        for r in (0, 1):
            assert analysis.theta_from_fits(fits, 1, residue=r) == {2: -a10 / 2}
            theta = analysis.theta_from_fits(fits, 2, residue=r)
            assert theta[2] == Fraction(len(R) - 1, 2)
            assert theta[4] == (a10 / 2) ** 2 / 2
        info["note"] = "; ".join(notes)
