"""Dense univariate polynomials over the rationals.

A polynomial is a list of :class:`Fraction` coefficients in ascending order
(``p[k]`` multiplies ``x**k``); the zero polynomial is ``[]``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from typing import Sequence

Poly = list  # list[Fraction], ascending


def trim(p: Sequence) -> Poly:
    out = [Fraction(c) for c in p]
    while out and out[-1] == 0:
        out.pop()
    return out


def degree(p: Sequence) -> int:
    """Degree, with -1 for the zero polynomial."""
    return len(trim(p)) - 1


def add(a: Sequence, b: Sequence) -> Poly:
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def sub(a: Sequence, b: Sequence) -> Poly:
    return add(a, [-c for c in b])


def scale(a: Sequence, k) -> Poly:
    return trim([c * k for c in a])


def mul(a: Sequence, b: Sequence) -> Poly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            out[i + j] += x * y
    return trim(out)


def power(a: Sequence, e: int) -> Poly:
    out: Poly = [Fraction(1)]
    for _ in range(e):
        out = mul(out, a)
    return out


def divmod_poly(a: Sequence, b: Sequence) -> tuple[Poly, Poly]:
    a, b = trim(a), trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lead = b[-1]
    while len(rem) >= len(b) and rem:
        shift = len(rem) - len(b)
        k = rem[-1] / lead
        quot[shift] = k
        for i, c in enumerate(b):
            rem[shift + i] -= k * c
        rem = trim(rem)
    return trim(quot), rem


def monic(p: Sequence) -> Poly:
    p = trim(p)
    return scale(p, 1 / p[-1]) if p else []


def gcd(a: Sequence, b: Sequence) -> Poly:
    """Monic greatest common divisor (Euclid over Q)."""
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def evaluate(p: Sequence, x) -> Fraction:
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def interpolate(xs: Sequence[int], ys: Sequence) -> Poly:
    """Unique polynomial of degree < len(xs) through the points (Newton form)."""
    if len(xs) != len(ys):
        raise ValueError("xs and ys differ in length")
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    coef = [Fraction(y) for y in ys]
    k = len(xs)
    for j in range(1, k):
        for i in range(k - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    out: Poly = []
    for i in range(k - 1, -1, -1):
        out = add(mul(out, [-Fraction(xs[i]), Fraction(1)]), [coef[i]])
    return out


def primitive_integer(p: Sequence) -> tuple[list[int], Fraction]:
    """Scale p to a primitive integer polynomial; return (ints, factor) with p = factor * ints."""
    p = trim(p)
    if not p:
        return [], Fraction(0)
    den = reduce(math.lcm, (c.denominator for c in p), 1)
    ints = [int(c * den) for c in p]
    content = reduce(math.gcd, (abs(c) for c in ints))
    ints = [c // content for c in ints]
    return ints, Fraction(content, den)


def series_divide(num: Sequence, den: Sequence, terms: int) -> list[Fraction]:
    """First ``terms`` power-series coefficients of num/den (den[0] != 0)."""
    den = [Fraction(c) for c in den]
    if not den or den[0] == 0:
        raise ZeroDivisionError("denominator has zero constant term")
    out: list[Fraction] = []
    for k in range(terms):
        acc = Fraction(num[k]) if k < len(num) else Fraction(0)
        for j in range(1, min(k, len(den) - 1) + 1):
            acc -= den[j] * out[k - j]
        out.append(acc / den[0])
    return out
