"""Hypergeometric Bernoulli numbers and polynomials, by several routes.

The family is indexed by a level ``N >= 1`` and an order ``r >= 1``.  The
level-N numbers ``B[N,n]`` are ``n!`` times the series coefficients of the
reciprocal of the normalized denominator series (the series whose k-th
coefficient is ``N!/(N+k)!``); at ``N = 1`` they are the classical Bernoulli
numbers.  The polynomials form an Appell sequence over the numbers, and the
order-r variants come from the r-th power of the same reciprocal series.

Each quantity is computed by independent routes (series inversion, the
linear recurrence, the order-raising step, the multiplicative operator) so
the identity layer can cross-certify them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    BiPoly,
    PowerSeries,
    UniPoly,
    bipoly_shift_s,
    exp_series,
    poly_derivative,
    series_invert,
    series_pow,
)

__all__ = [
    "HBNumberTable",
    "HBPolyTable",
    "APolyTable",
    "normalized_denominator",
    "hb_numbers",
    "hb_polys",
    "hb_higher_numbers",
    "hb_higher_polys_series",
    "hb_higher_polys_recurrence",
    "hb_order_step",
    "a_poly",
    "a_poly_at_zero",
    "mult_operator_apply",
]

_X = UniPoly((0, 1))


@dataclass(frozen=True)
class HBNumberTable:
    """Numbers B[N,n] for n = 0..len(values)-1 at level N."""

    N: int
    values: tuple[Fraction, ...]


@dataclass(frozen=True)
class HBPolyTable:
    """Polynomials B[N,n]^(r)(x) for n = 0..len(polys)-1 at level N, order r."""

    N: int
    r: int
    polys: tuple[UniPoly, ...]


@dataclass(frozen=True)
class APolyTable:
    """Coefficient polynomials A_r(i) of the sums-of-products expansion.

    ``entries[i]`` is the bivariate polynomial in (x, s) for 0 <= i <= r-1;
    indices outside that range are the zero polynomial.  The x-free variant
    (used for the number identity) stores entries of x-degree zero.
    """

    N: int
    r: int
    entries: tuple[BiPoly, ...]


def normalized_denominator(N: int, order: int) -> PowerSeries:
    """Series with coefficient N!/(N+k)! at t**k (constant term 1).

    This is the exponential series with its degree-(N-1) Taylor polynomial
    removed, shifted down by the valuation N and rescaled by N!; its
    reciprocal generates the level-N numbers.
    """
    if N < 1:
        raise ValueError("level N must be >= 1")
    if order < 0:
        raise ValueError("order must be nonnegative")
    e = exp_series(order + N)
    scale = math.factorial(N)
    return PowerSeries(tuple(scale * c for c in e.coeffs[N:]))


def hb_numbers(N: int, n_max: int) -> HBNumberTable:
    """Numbers B[N,0..n_max] via exact series inversion."""
    f = series_invert(normalized_denominator(N, n_max))
    values = tuple(math.factorial(n) * c for n, c in enumerate(f.coeffs))
    return HBNumberTable(N=N, values=values)


def _appell_polys(values: tuple[Fraction, ...]) -> tuple[UniPoly, ...]:
    """Appell sequence over a value sequence: p_n(x) = sum_k C(n,k) v_{n-k} x^k."""
    polys = []
    for n in range(len(values)):
        coeffs = tuple(math.comb(n, k) * values[n - k] for k in range(n + 1))
        polys.append(UniPoly(coeffs))
    return tuple(polys)


def hb_polys(N: int, n_max: int) -> HBPolyTable:
    """Order-1 polynomial table, built by the Appell expansion of hb_numbers."""
    values = hb_numbers(N, n_max).values
    return HBPolyTable(N=N, r=1, polys=_appell_polys(values))


def hb_higher_numbers(N: int, r: int, n_max: int) -> HBNumberTable:
    """Order-r numbers: n! times coefficients of the r-th power of the reciprocal series."""
    if r < 1:
        raise ValueError("order r must be >= 1")
    f = series_invert(normalized_denominator(N, n_max))
    g = series_pow(f, r)
    values = tuple(math.factorial(n) * c for n, c in enumerate(g.coeffs))
    return HBNumberTable(N=N, values=values)


def hb_higher_polys_series(N: int, r: int, n_max: int) -> HBPolyTable:
    """Order-r polynomial table via the power-of-series route (reference path)."""
    values = hb_higher_numbers(N, r, n_max).values
    return HBPolyTable(N=N, r=r, polys=_appell_polys(values))


def hb_higher_polys_recurrence(
    N: int, r: int, n_max: int, numbers: HBNumberTable | None = None
) -> HBPolyTable:
    """Order-r polynomial table built purely from the linear recurrence.

    Starting from the constant 1, each step is

        p_{n+1} = (x - r/(N+1)) p_n - r N sum_{k<n} C(n,k) B[N,n-k+1]/(n-k+1) p_k

    which consumes only the order-1 numbers; the series engine is never
    touched, so this path is independent of hb_higher_polys_series.  An
    explicit ``numbers`` table may be injected (used for fault-sensitivity
    testing); it must cover indices up to n_max.
    """
    if r < 1:
        raise ValueError("order r must be >= 1")
    if numbers is None:
        numbers = hb_numbers(N, n_max + 1)
    values = numbers.values
    shift = UniPoly((Fraction(-r, N + 1), Fraction(1)))  # x - r/(N+1)
    polys = [UniPoly((Fraction(1),))]
    for n in range(n_max):
        nxt = shift * polys[n]
        for k in range(n):
            w = Fraction(r * N * math.comb(n, k), 1) * values[n - k + 1] / (n - k + 1)
            nxt = nxt - w * polys[k]
        polys.append(nxt)
    return HBPolyTable(N=N, r=r, polys=tuple(polys))


def hb_order_step(table: HBPolyTable, n: int) -> UniPoly:
    """Raise the order by one at index n:

        p^(r+1)_n = (1/N)(N - n/r) p^(r)_n + (1/N)(n/r)(x - r) p^(r)_{n-1}

    The division points n/r are exact rationals.  For n = 0 the result is
    the constant 1; otherwise indices n and n-1 must exist in the table.
    """
    if n == 0:
        return UniPoly((Fraction(1),))
    if n < 0 or n >= len(table.polys):
        raise IndexError(f"index {n} not covered by table of size {len(table.polys)}")
    N, r = table.N, table.r
    a = (Fraction(N) - Fraction(n, r)) / N
    b = Fraction(n, r) / N
    x_minus_r = UniPoly((Fraction(-r), Fraction(1)))
    return a * table.polys[n] + b * (x_minus_r * table.polys[n - 1])


def a_poly(N: int, r: int) -> APolyTable:
    """Coefficient polynomial table A_r(i, x; s), i = 0..r-1.

    Built by the two-term recurrence

        A_1(0) = 1
        A_r(i) = (s-1)/(r-1) * A_{r-1}(i)|_{s -> s-N}
                 - (x-(r-1))/(r-1) * A_{r-1}(i-1)|_{s -> s-N+1}

    with out-of-range entries zero; the s-shifts are exact binomial
    re-expansions.
    """
    if N < 1 or r < 1:
        raise ValueError("N and r must be >= 1")
    entries: list[BiPoly] = [BiPoly(((Fraction(1),),))]
    s_minus_1 = BiPoly.from_s_poly(UniPoly((-1, 1)))
    for rr in range(2, r + 1):
        inv = Fraction(1, rr - 1)
        x_factor = BiPoly.from_x_poly(UniPoly((-(rr - 1), 1)))  # x - (rr-1)
        new: list[BiPoly] = []
        for i in range(rr):
            term = BiPoly()
            if i <= rr - 2:
                term = term + inv * (s_minus_1 * bipoly_shift_s(entries[i], -N))
            if i >= 1:
                term = term - inv * (x_factor * bipoly_shift_s(entries[i - 1], -N + 1))
            new.append(term)
        entries = new
    return APolyTable(N=N, r=r, entries=tuple(entries))


def a_poly_at_zero(N: int, r: int) -> APolyTable:
    """The x-free coefficient table, built by its own recurrence

        A_1(0) = 1
        A_r(i) = (s-1)/(r-1) * A_{r-1}(i)|_{s -> s-N} + A_{r-1}(i-1)|_{s -> s-N+1}

    rather than by substituting x = 0 into a_poly; the identity layer
    cross-checks that the two agree.
    """
    if N < 1 or r < 1:
        raise ValueError("N and r must be >= 1")
    entries: list[BiPoly] = [BiPoly(((Fraction(1),),))]
    s_minus_1 = BiPoly.from_s_poly(UniPoly((-1, 1)))
    for rr in range(2, r + 1):
        inv = Fraction(1, rr - 1)
        new: list[BiPoly] = []
        for i in range(rr):
            term = BiPoly()
            if i <= rr - 2:
                term = term + inv * (s_minus_1 * bipoly_shift_s(entries[i], -N))
            if i >= 1:
                term = term + bipoly_shift_s(entries[i - 1], -N + 1)
            new.append(term)
        entries = new
    return APolyTable(N=N, r=r, entries=tuple(entries))


def mult_operator_apply(table: HBPolyTable, n: int) -> UniPoly:
    """Apply the multiplicative (index-raising) operator to table.polys[n].

    The operator for index n is

        (x - r/(N+1)) - r N sum_{j=1..n} B[N,j+1]/(j+1)! D_x^j

    realized with exact repeated differentiation; the result must equal
    table.polys[n+1], which the tests assert.
    """
    if n < 0 or n >= len(table.polys):
        raise IndexError(f"index {n} not covered by table of size {len(table.polys)}")
    N, r = table.N, table.r
    values = hb_numbers(N, n + 1).values
    p = table.polys[n]
    shift = UniPoly((Fraction(-r, N + 1), Fraction(1)))
    acc = shift * p
    dp = p
    for j in range(1, n + 1):
        dp = poly_derivative(dp)
        w = Fraction(r * N) * values[j + 1] / math.factorial(j + 1)
        acc = acc - w * dp
    return acc
