"""Command-line interface.

Exit codes: 0 ok, 1 check failure, 2 usage or parse error (including an
unsupported q and an unfittable hypothesis), 3 search budget exceeded,
4 corrupt cache.
"""

from __future__ import annotations

import csv
import functools
import io
import json
import math
import sys

import click

from . import analysis
from .cache import CacheStore, resolve_cache_path
from .closed import one_move_closed, one_two_rider_quasipolynomial, u2_closed
from .enumerator import DIAGONAL_QUEEN_MAX, count_diagonal_queen, count_nonattacking
from .errors import (
    CacheCorruption,
    InconsistentData,
    InsufficientData,
    NoPeriodFound,
    ParseError,
    ResourceLimit,
    RiderCountError,
    UnsupportedQ,
)
from .lines import as_normalized
from .model import Move, parse_piece
from .quasipoly import coefficient_table

EXIT_OK, EXIT_CHECK, EXIT_USAGE, EXIT_RESOURCE, EXIT_CORRUPT = 0, 1, 2, 3, 4

STANDARD_PIECES = ("Q", "R", "B", "N", "1,2", "1,3", "2,3", "1,2;2,1")
CONJECTURE_PIECES = ("Q", "N", "1,2", "1,3")


def _exit_code(exc: Exception) -> int:
    if isinstance(exc, CacheCorruption):
        return EXIT_CORRUPT
    if isinstance(exc, ResourceLimit):
        return EXIT_RESOURCE
    if isinstance(exc, (ParseError, UnsupportedQ, InsufficientData, InconsistentData, NoPeriodFound, ValueError)):
        return EXIT_USAGE
    return EXIT_CHECK


def _guard(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (RiderCountError, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(_exit_code(exc))

    return wrapper


def parse_range(text: str) -> list[int]:
    """``"a..b"`` (inclusive) or a single integer."""
    text = text.strip()
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise click.BadParameter(f"expected N or A..B, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise click.BadParameter(f"bad range {text!r}")
    return list(range(lo, hi + 1))


def _piece(text: str):
    try:
        return parse_piece(text)
    except ParseError as exc:
        raise click.BadParameter(str(exc)) from None


def _emit(rows: list[dict], as_json: bool) -> None:
    if as_json:
        click.echo(json.dumps(rows))
        return
    if not rows:
        return
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    click.echo(buf.getvalue(), nl=False)


_cache_opt = click.option("--cache", "cache_path", default=None, help="Count cache CSV (default $RIDERCOUNT_CACHE or ./counts.csv).")
_threads_opt = click.option("--threads", default=1, show_default=True, help="Worker threads for enumeration.")
_budget_opt = click.option("--budget", default=0, show_default=True, help="Search node budget per count; 0 means unlimited.")
_json_opt = click.option("--json", "as_json", is_flag=True, help="Emit JSON instead of CSV.")


def _cached_counter(store: CacheStore, threads: int, budget: int):
    def counter(piece, q, n):
        return store.count(piece, q, n, threads=threads, node_budget=budget).count

    return counter


@click.group()
def main():
    """Count nonattacking placements of rider pieces on square boards."""


@main.command()
@click.option("-p", "--piece", "piece_text", required=True, help="Piece: alias (Q R B N), Qxxxx, or moves 'c,d;c,d'.")
@click.option("-q", "q", type=int, required=True)
@click.option("-n", "n_text", required=True, help="Board size or inclusive range a..b.")
@click.option("--verify-cache", is_flag=True, help="Recompute cached values and compare.")
@_cache_opt
@_threads_opt
@_budget_opt
@_json_opt
@_guard
def count(piece_text, q, n_text, verify_cache, cache_path, threads, budget, as_json):
    """Brute-force counts, read through and written back to the cache."""
    piece = _piece(piece_text)
    if q < 0:
        raise click.BadParameter("q must be >= 0")
    ns = parse_range(n_text)
    store = CacheStore(resolve_cache_path(cache_path))
    rows = []
    try:
        for n in ns:
            if verify_cache:
                rec = count_nonattacking(piece, q, n, threads=threads, node_budget=budget)
                store.verify(rec)
                store.put(rec)
            else:
                rec = store.count(piece, q, n, threads=threads, node_budget=budget)
            rows.append({"piece": rec.piece, "q": q, "n": n, "count": rec.count})
    finally:
        store.flush()
    _emit(rows, as_json)


def _formula_value(piece, q: int, n: int) -> int:
    if q == 2:
        return u2_closed(piece, n)
    if q == 1:
        return n * n
    if len(piece) == 1:
        (m,) = piece.moves
        return one_move_closed(m, q, n)
    raise UnsupportedQ(f"no closed form for q={q} with {len(piece)} moves")


@main.command()
@click.option("-p", "--piece", "piece_text", required=True)
@click.option("-q", "q", type=int, required=True)
@click.option("-n", "n_text", required=True)
@click.option("--diff-brute", is_flag=True, help="Also brute-force and report mismatches.")
@_threads_opt
@_json_opt
@_guard
def formula(piece_text, q, n_text, diff_brute, threads, as_json):
    """Closed-form values (two pieces, or one-move riders with q <= 4)."""
    piece = _piece(piece_text)
    rows, bad = [], 0
    for n in parse_range(n_text):
        row = {"piece": piece.canonical(), "q": q, "n": n, "value": _formula_value(piece, q, n)}
        if diff_brute:
            b = count_nonattacking(piece, q, n, threads=threads).count
            row["brute"] = b
            row["match"] = b == row["value"]
            bad += not row["match"]
        rows.append(row)
    _emit(rows, as_json)
    if bad:
        sys.exit(EXIT_CHECK)


@main.command()
@click.option("-p", "--piece", "piece_text", required=True)
@click.option("-q", "q", type=int, required=True)
@click.option("--period-bound", type=int, default=None, help="Largest period tried (default: lambda of the piece).")
@click.option("-n-max", "--n-max", "n_max", type=int, required=True)
@_cache_opt
@_threads_opt
@_budget_opt
@_json_opt
@_guard
def fit(piece_text, q, period_bound, n_max, cache_path, threads, budget, as_json):
    """Fit u(q; n) for n = 0..n-max as a quasipolynomial of degree 2q."""
    piece = _piece(piece_text)
    bound = period_bound or piece.lam
    store = CacheStore(resolve_cache_path(cache_path))
    try:
        counter = _cached_counter(store, threads, budget)
        values = {n: counter(piece, q, n) for n in range(n_max + 1)}
    finally:
        store.flush()
    qp = analysis.fit_counts(values, 2 * q, bound)
    table = coefficient_table(qp)
    at_minus_one = qp(-1)
    if as_json:
        click.echo(json.dumps({
            "quasipolynomial": qp.to_dict(),
            "coefficient_periods": list(table.periods),
            "value_at_minus_one": f"{at_minus_one.numerator}/{at_minus_one.denominator}",
        }))
        return
    click.echo(qp.to_json())
    click.echo("power,period," + ",".join(f"r{r}" for r in range(qp.period)))
    for i, row in enumerate(table.values):
        vals = ",".join(f"{c.numerator}/{c.denominator}" for c in row)
        click.echo(f"{qp.degree - i},{table.periods[i]},{vals}")
    click.echo(f"value_at_minus_one,{at_minus_one}")


@main.command()
@click.argument("suite", type=click.Choice(["two-piece", "parity", "gamma", "conjectures", "recurrence", "all"]))
@click.option("--piece", "piece_texts", multiple=True, help="Restrict to these pieces (repeatable).")
@click.option("-q", "q", type=int, default=None, help="Number of pieces for gamma/recurrence checks.")
@click.option("-n-max", "--n-max", "n_max", type=int, default=None)
@click.option("--report", "report_path", default=None, help="Append JSON-lines reports to this file.")
@_cache_opt
@_threads_opt
@_budget_opt
@_guard
def check(suite, piece_texts, q, n_max, report_path, cache_path, threads, budget):
    """Run a verification suite; prints one JSON report per line."""
    store = CacheStore(resolve_cache_path(cache_path))
    counter = _cached_counter(store, 1, budget)
    chosen = [_piece(t) for t in piece_texts]
    reports = []
    try:
        if suite in ("two-piece", "all"):
            pieces = chosen or [parse_piece(t) for t in STANDARD_PIECES]
            nm = n_max or max(12, max(6 * P.lam + 1 for P in pieces))
            reports.append(analysis.verify_two_piece_theorem(pieces, nm, counter, workers=threads))
        if suite in ("parity", "all"):
            if chosen:
                moves = [m for P in chosen for m in P.moves]
            else:
                moves = [Move(c, d) for d in range(1, 6) for c in range(0, d + 1) if _coprime(c, d)]
            nm = n_max or 2 * 5 * max(as_normalized(m).dhat for m in moves)
            reports.append(analysis.verify_parity_theorem(moves, nm))
        if suite in ("gamma", "all"):
            pieces = chosen or [parse_piece("Q"), parse_piece("1,2")]
            qs = [q] if q else [2, 3]
            for P in pieces:
                for qq in qs:
                    expected = None
                    if P.canonical() == "1,2" and qq in (2, 3, 4):
                        expected = one_two_rider_quasipolynomial(qq)
                    # queen q=3 already has period 2 although lambda = 1
                    reports.append(analysis.verify_gamma_theorem(
                        P, qq, n_max or 22, counter, period_bound=2 * P.lam, expected=expected
                    ))
        if suite in ("recurrence", "all"):
            pieces = chosen or [parse_piece(t) for t in STANDARD_PIECES]
            qq = q or 2
            for P in pieces:
                nm = n_max or max(12, (2 * qq + 2) * P.lam + P.lam)
                values = {n: counter(P, qq, n) for n in range(nm + 1)}
                try:
                    qp = analysis.fit_counts(values, 2 * qq, P.lam)
                except (InsufficientData, InconsistentData) as exc:
                    reports.append(analysis.CheckReport(
                        "recurrence", P.canonical(), {"q": qq, "n_range": [0, nm]}, "inconclusive", reason=str(exc)
                    ))
                    continue
                reports.append(analysis.recurrence_report(P, qq, qp, values))
        if suite in ("conjectures", "all"):
            pieces = chosen or [parse_piece(t) for t in CONJECTURE_PIECES]
            qs = [q] if q else [2, 3]
            reports.extend(analysis.test_conjectures(pieces, qs, n_max or 22, counter))
    finally:
        store.flush()
    for r in reports:
        click.echo(r.to_json())
    if report_path:
        analysis.append_reports(report_path, reports)
    failed = any(
        (isinstance(r, analysis.CheckReport) and r.verdict == "fail")
        or (isinstance(r, analysis.ConjectureResult) and r.consistent is False)
        for r in reports
    )
    if failed:
        sys.exit(EXIT_CHECK)


def _coprime(c: int, d: int) -> bool:
    return math.gcd(c, d) == 1


@main.command()
@click.option("-n-max", "--n-max", "n_max", type=int, required=True)
@click.option("--limit", type=int, default=DIAGONAL_QUEEN_MAX, show_default=True, help="Largest n allowed.")
@_json_opt
@_guard
def nqueens(n_max, limit, as_json):
    """n nonattacking queens on the n x n board, n = 1..n-max."""
    if n_max < 1:
        raise click.BadParameter("n-max must be >= 1")
    if n_max > limit:
        raise ResourceLimit(f"n-max {n_max} exceeds the limit {limit}")
    rows = [{"n": n, "count": count_diagonal_queen(n, limit).count} for n in range(1, n_max + 1)]
    _emit(rows, as_json)


if __name__ == "__main__":  # pragma: no cover
    main()
