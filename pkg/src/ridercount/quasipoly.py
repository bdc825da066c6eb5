"""Exact quasipolynomials: fitting, periods, coefficient tables, parity.

A quasipolynomial of period ``p`` is stored as ``p`` constituent polynomials;
the constituent used at an integer ``n`` is ``n mod p`` with the Euclidean
(nonnegative) remainder, so negative arguments are well defined.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import polys
from .errors import (
    InconsistentData,
    InconsistentSystem,
    InsufficientData,
    NoPeriodFound,
)

__all__ = [
    "Quasipolynomial",
    "CoefficientTable",
    "fit_quasipolynomial",
    "minimal_period",
    "coefficient_table",
    "evaluate",
    "parity_check",
    "falling_factorial",
    "falling_factorial_decomposition",
    "solve_exact",
    "RationalGF",
    "generating_function",
]


@dataclass(frozen=True)
class Quasipolynomial:
    """``constituents[r]`` lists coefficients from ``n**degree`` down to ``n**0``."""

    period: int
    degree: int
    constituents: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be >= 1")
        if len(self.constituents) != self.period:
            raise ValueError("need one constituent per residue class")
        cons = tuple(tuple(Fraction(c) for c in row) for row in self.constituents)
        if any(len(row) != self.degree + 1 for row in cons):
            raise ValueError("every constituent must list degree+1 coefficients")
        if self.degree > 0 and all(row[0] == 0 for row in cons):
            raise ValueError(f"no constituent attains degree {self.degree}")
        object.__setattr__(self, "constituents", cons)

    @classmethod
    def from_ascending(cls, period: int, rows: Sequence[Sequence]) -> Quasipolynomial:
        """Build from ascending coefficient lists, trimming to the true degree."""
        rows = [polys.trim(r) for r in rows]
        deg = max((len(r) - 1 for r in rows), default=0)
        deg = max(deg, 0)
        desc = []
        for r in rows:
            padded = list(r) + [Fraction(0)] * (deg + 1 - len(r))
            desc.append(tuple(reversed(padded)))
        return cls(period, deg, tuple(desc))

    def __call__(self, n: int) -> Fraction:
        return evaluate(self, n)

    def constituent(self, r: int) -> list[Fraction]:
        """Ascending coefficient list of constituent r."""
        return list(reversed(self.constituents[r % self.period]))

    def coefficient(self, power: int, residue: int) -> Fraction:
        """Coefficient of ``n**power`` in the constituent for ``residue``."""
        if power < 0 or power > self.degree:
            return Fraction(0)
        return self.constituents[residue % self.period][self.degree - power]

    def coefficient_values(self, power: int) -> list[Fraction]:
        return [self.coefficient(power, r) for r in range(self.period)]

    def reperiod(self, period: int) -> Quasipolynomial:
        """Same function written with a period that is a multiple of this one."""
        if period % self.period:
            raise ValueError(f"{period} is not a multiple of {self.period}")
        rows = tuple(self.constituents[r % self.period] for r in range(period))
        return Quasipolynomial(period, self.degree, rows)

    def reduced(self) -> Quasipolynomial:
        """Rewrite with the smallest period that represents the same function."""
        for t in _divisors(self.period):
            if all(self.constituents[r] == self.constituents[r % t] for r in range(self.period)):
                return Quasipolynomial(t, self.degree, self.constituents[:t])
        return self  # pragma: no cover - t = period always matches

    def same_function(self, other: Quasipolynomial) -> bool:
        a, b = self.reduced(), other.reduced()
        return a.period == b.period and a.degree == b.degree and a.constituents == b.constituents

    # JSON: {"period": p, "degree": D, "constituents": [["num/den", ...], ...]}
    def to_dict(self) -> dict:
        return {
            "period": self.period,
            "degree": self.degree,
            "constituents": [[_frac_str(c) for c in row] for row in self.constituents],
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: Mapping) -> Quasipolynomial:
        rows = tuple(tuple(Fraction(c) for c in row) for row in data["constituents"])
        return cls(int(data["period"]), int(data["degree"]), rows)

    @classmethod
    def from_json(cls, text: str) -> Quasipolynomial:
        return cls.from_dict(json.loads(text))


def _frac_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _divisors(p: int) -> list[int]:
    return [t for t in range(1, p + 1) if p % t == 0]


def evaluate(qp: Quasipolynomial, n: int) -> Fraction:
    acc = Fraction(0)
    for c in qp.constituents[n % qp.period]:
        acc = acc * n + c
    return acc


def fit_quasipolynomial(
    values: Mapping[int, int], degree: int, period: int, *, validate: bool = False
) -> Quasipolynomial:
    """Interpolate each residue class exactly and check every extra point.

    With ``validate=True`` every class must also have at least one point
    beyond the ``degree + 1`` used for interpolation.
    """
    if degree < 0 or period < 1:
        raise ValueError("degree must be >= 0 and period >= 1")
    need = degree + 1 + (1 if validate else 0)
    rows = []
    for r in range(period):
        ns = sorted(n for n in values if n % period == r)
        if len(ns) < need:
            raise InsufficientData(r, len(ns), need)
        base = ns[: degree + 1]
        poly = polys.interpolate(base, [values[n] for n in base])
        for n in ns[degree + 1:]:
            got = polys.evaluate(poly, n)
            if got != values[n]:
                raise InconsistentData(n, got, values[n])
        rows.append(poly)
    return Quasipolynomial.from_ascending(period, rows)


def minimal_period(values: Mapping[int, int], degree: int, candidate_bound: int) -> int:
    """Smallest period whose validated fit reproduces every supplied value.

    Divisors of ``candidate_bound`` are tried first (ascending), then the
    remaining integers up to the bound.
    """
    if candidate_bound < 1:
        raise ValueError("candidate_bound must be >= 1")
    divs = _divisors(candidate_bound)
    order = divs + [t for t in range(1, candidate_bound + 1) if t not in divs]
    for p in order:
        try:
            fit_quasipolynomial(values, degree, p, validate=True)
        except InconsistentData:
            continue
        return p
    raise NoPeriodFound(f"no period <= {candidate_bound} fits at degree {degree}")


@dataclass(frozen=True)
class CoefficientTable:
    """Row i holds the coefficient of ``n**(degree - i)`` for residues 0..period-1."""

    degree: int
    period: int
    values: tuple[tuple[Fraction, ...], ...]
    periods: tuple[int, ...]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.values[i]

    def is_constant(self, i: int) -> bool:
        return self.periods[i] == 1

    def to_dict(self) -> dict:
        return {
            "degree": self.degree,
            "period": self.period,
            "coefficients": [[_frac_str(c) for c in row] for row in self.values],
            "periods": list(self.periods),
        }


def _sequence_period(seq: Sequence) -> int:
    p = len(seq)
    for t in _divisors(p):
        if all(seq[r] == seq[r % t] for r in range(p)):
            return t
    return p  # pragma: no cover


def coefficient_table(qp: Quasipolynomial) -> CoefficientTable:
    rows = tuple(
        tuple(qp.constituents[r][i] for r in range(qp.period)) for i in range(qp.degree + 1)
    )
    return CoefficientTable(qp.degree, qp.period, rows, tuple(_sequence_period(r) for r in rows))


def parity_check(qp: Quasipolynomial, dim: int) -> bool:
    """Check ``alpha_{p-i}(n) == (-1)**dim * alpha_i(-n)`` for every residue i.

    i = 0 and (for even p) i = p/2 are the constituents that must themselves
    be odd or even polynomials.
    """
    sign = -1 if dim % 2 else 1
    p = qp.period
    for i in range(p):
        mirrored = qp.constituent(-i % p)
        reflected = [sign * c * (-1) ** k for k, c in enumerate(qp.constituent(i))]
        if polys.trim(mirrored) != polys.trim(reflected):
            return False
    return True


def falling_factorial(q: int, k: int) -> int:
    out = 1
    for j in range(k):
        out *= q - j
    return out


def solve_exact(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction]:
    """Solve an (over)determined linear system exactly.

    Raises :class:`InsufficientData` when the columns are dependent and
    :class:`InconsistentSystem` when the extra equations disagree.
    """
    m = len(rows)
    k = len(rows[0]) if rows else 0
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    piv_row = 0
    pivots = []
    for col in range(k):
        sel = next((r for r in range(piv_row, m) if aug[r][col] != 0), None)
        if sel is None:
            raise InsufficientData(col, piv_row, k, f"unknown {col} is undetermined by the data")
        aug[piv_row], aug[sel] = aug[sel], aug[piv_row]
        lead = aug[piv_row][col]
        aug[piv_row] = [x / lead for x in aug[piv_row]]
        for r in range(m):
            if r != piv_row and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[piv_row])]
        pivots.append(col)
        piv_row += 1
    for r in range(piv_row, m):
        if aug[r][k] != 0:
            raise InconsistentSystem(f"equation {r} is inconsistent (residual {aug[r][k]})")
    return [aug[i][k] for i in range(k)]


def falling_factorial_decomposition(
    scaled_gammas: Mapping[int, Fraction], i: int, kappa_max: int | None = None
) -> dict[int, Fraction]:
    """Write ``q!*gamma_i`` in the falling-factorial basis ``(q)_2 .. (q)_{2i}``.

    ``scaled_gammas`` maps q to the value of ``q!*gamma_i`` at one residue.
    Returns ``{kappa: theta_{i,kappa}}``.
    """
    if i < 1:
        raise ValueError("i must be >= 1")
    top = 2 * i if kappa_max is None else kappa_max
    kappas = list(range(2, top + 1))
    qs = sorted(scaled_gammas)
    if len(qs) < len(kappas):
        raise InsufficientData(0, len(qs), len(kappas), f"need {len(kappas)} values of q, have {len(qs)}")
    rows = [[falling_factorial(q, k) for k in kappas] for q in qs]
    sol = solve_exact(rows, [scaled_gammas[q] for q in qs])
    return dict(zip(kappas, sol))


@dataclass(frozen=True)
class RationalGF:
    """``sum_{n>=0} f(n) x**n = numerator / denominator`` in lowest terms.

    Integer coefficient lists in ascending powers with ``denominator[0] == 1``.
    ``naive_length`` is the degree of the unreduced denominator.
    """

    numerator: tuple[int, ...]
    denominator: tuple[int, ...]
    naive_length: int

    @property
    def recurrence_length(self) -> int:
        return len(self.denominator) - 1

    @property
    def reduced(self) -> bool:
        return self.recurrence_length < self.naive_length

    def series(self, terms: int) -> list[int]:
        out = polys.series_divide(self.numerator, self.denominator, terms)
        return [int(x) for x in out]

    def to_dict(self) -> dict:
        return {
            "numerator": list(self.numerator),
            "denominator": list(self.denominator),
            "recurrence_length": self.recurrence_length,
            "naive_length": self.naive_length,
        }


def generating_function(qp: Quasipolynomial) -> RationalGF:
    """Rational generating function of ``n -> qp(n)`` for n >= 0, reduced."""
    p, deg = qp.period, qp.degree
    naive = p * (deg + 1)
    den = polys.power([Fraction(1)] + [Fraction(0)] * (p - 1) + [Fraction(-1)], deg + 1)
    head = [evaluate(qp, n) for n in range(naive)]
    num = polys.mul(head, den)[:naive]
    num = polys.trim(num)
    if not num:
        return RationalGF((), (1,), naive)
    g = polys.gcd(num, den)
    num = polys.divmod_poly(num, g)[0]
    den = polys.divmod_poly(den, g)[0]
    lead = den[0]
    num = [c / lead for c in num]
    den = [c / lead for c in den]
    if any(c.denominator != 1 for c in num + den):
        raise ValueError("sequence is not integer valued")
    return RationalGF(tuple(int(c) for c in num), tuple(int(c) for c in den), naive)
