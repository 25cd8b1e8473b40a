"""Exact arithmetic kernels: rationals, dense polynomials, truncated power series.

Everything here is pure and immutable.  The ground field is the exact
rationals (``fractions.Fraction``), so every operation in this module is
exact; there is no floating point anywhere.

Three container types:

* :class:`UniPoly` -- dense univariate polynomial, ascending coefficients.
* :class:`BiPoly` -- dense bivariate polynomial in ``(x, s)``.
* :class:`PowerSeries` -- truncated formal power series in ``t`` with an
  explicit truncation order; binary operations take the min of the operand
  orders and never claim precision beyond it.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

Rational = Fraction
RationalLike = Union[int, Fraction]

__all__ = [
    "Rational",
    "UniPoly",
    "BiPoly",
    "PowerSeries",
    "rat",
    "format_rational",
    "parse_rational",
    "poly_eval",
    "poly_derivative",
    "poly_integral_weighted",
    "bipoly_subst_s",
    "bipoly_subst_x",
    "bipoly_shift_s",
    "series_mul",
    "series_add",
    "series_sub",
    "series_scale",
    "series_truncate",
    "series_invert",
    "series_pow",
    "exp_series",
    "pochhammer",
]


def rat(num: int, den: int = 1) -> Fraction:
    """Exact rational num/den, canonically reduced with positive denominator."""
    if den == 0:
        raise ZeroDivisionError("rational with zero denominator")
    return Fraction(num, den)


_RATIONAL_RE = re.compile(r"^(-?\d+)(?:/(\d+))?$")


def format_rational(q: RationalLike) -> str:
    """Serialize to the reduced string "p/q", or just "p" when q = 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" (q > 0).  Anything else raises ValueError."""
    m = _RATIONAL_RE.match(text.strip())
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


# ---------------------------------------------------------------------------
# univariate polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UniPoly:
    """Dense polynomial in one variable, ``coeffs[k]`` multiplying ``x**k``.

    Canonical form: no trailing zero coefficient; the zero polynomial is the
    empty tuple.  ``degree`` of the zero polynomial is ``None`` (a sentinel,
    never -1 arithmetic).
    """

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        cs = [Fraction(c) for c in self.coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def leading_coefficient(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __call__(self, v: RationalLike) -> Fraction:
        return poly_eval(self, v)

    def __add__(self, other: UniPoly) -> UniPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, c in enumerate(b):
            out[k] += c
        return UniPoly(tuple(out))

    def __neg__(self) -> UniPoly:
        return UniPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: UniPoly) -> UniPoly:
        return self + (-other)

    def __mul__(self, other: UniPoly | RationalLike) -> UniPoly:
        if isinstance(other, UniPoly):
            if self.is_zero or other.is_zero:
                return UniPoly()
            out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return UniPoly(tuple(out))
        c = Fraction(other)
        return UniPoly(tuple(a * c for a in self.coeffs))

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = [f"({format_rational(c)})*x^{k}" for k, c in enumerate(self.coeffs) if c]
        return " + ".join(parts)


def poly_eval(p: UniPoly, v: RationalLike) -> Fraction:
    """Exact Horner evaluation of p at v."""
    v = Fraction(v)
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * v + c
    return acc


def poly_derivative(p: UniPoly) -> UniPoly:
    """Exact formal derivative."""
    return UniPoly(tuple(k * c for k, c in enumerate(p.coeffs) if k >= 1))


def poly_integral_weighted(p: UniPoly, n_weight: int) -> Fraction:
    """Exact value of ``integral_0^1 (1-x)**(n_weight-1) p(x) dx``.

    Expands ``(1-x)**(n_weight-1)`` binomially and integrates monomials term
    by term; requires ``n_weight >= 1``.
    """
    if n_weight < 1:
        raise ValueError("weight exponent base must be >= 1")
    total = Fraction(0)
    for j in range(n_weight):
        # (1-x)^(N-1) = sum_j C(N-1, j) (-1)^j x^j
        w = Fraction((-1) ** j * math.comb(n_weight - 1, j))
        for k, c in enumerate(p.coeffs):
            total += w * c / (j + k + 1)
    return total


# ---------------------------------------------------------------------------
# bivariate polynomials in (x, s)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BiPoly:
    """Dense polynomial in two variables, ``coeffs[i][j]`` multiplying ``x**i * s**j``.

    Stored as a rectangular matrix with trailing all-zero rows and columns
    trimmed; the zero polynomial is the empty tuple.
    """

    coeffs: tuple[tuple[Fraction, ...], ...] = ()

    def __post_init__(self) -> None:
        rows = [[Fraction(c) for c in row] for row in self.coeffs]
        width = max((len(r) for r in rows), default=0)
        for r in rows:
            r.extend([Fraction(0)] * (width - len(r)))
        while width and all(r[width - 1] == 0 for r in rows):
            width -= 1
        rows = [r[:width] for r in rows]
        while rows and all(c == 0 for c in rows[-1]):
            rows.pop()
        object.__setattr__(self, "coeffs", tuple(tuple(r) for r in rows))

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def x_degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def s_degree(self) -> int | None:
        if not self.coeffs:
            return None
        return len(self.coeffs[0]) - 1

    def __add__(self, other: BiPoly) -> BiPoly:
        nrows = max(len(self.coeffs), len(other.coeffs))
        ncols = max(
            len(self.coeffs[0]) if self.coeffs else 0,
            len(other.coeffs[0]) if other.coeffs else 0,
        )
        out = [[Fraction(0)] * ncols for _ in range(nrows)]
        for mat in (self.coeffs, other.coeffs):
            for i, row in enumerate(mat):
                for j, c in enumerate(row):
                    out[i][j] += c
        return BiPoly(tuple(tuple(r) for r in out))

    def __neg__(self) -> BiPoly:
        return BiPoly(tuple(tuple(-c for c in row) for row in self.coeffs))

    def __sub__(self, other: BiPoly) -> BiPoly:
        return self + (-other)

    def __mul__(self, other: BiPoly | RationalLike) -> BiPoly:
        if isinstance(other, BiPoly):
            if self.is_zero or other.is_zero:
                return BiPoly()
            nrows = len(self.coeffs) + len(other.coeffs) - 1
            ncols = len(self.coeffs[0]) + len(other.coeffs[0]) - 1
            out = [[Fraction(0)] * ncols for _ in range(nrows)]
            for i1, row1 in enumerate(self.coeffs):
                for j1, c1 in enumerate(row1):
                    if c1 == 0:
                        continue
                    for i2, row2 in enumerate(other.coeffs):
                        for j2, c2 in enumerate(row2):
                            out[i1 + i2][j1 + j2] += c1 * c2
            return BiPoly(tuple(tuple(r) for r in out))
        c = Fraction(other)
        return BiPoly(tuple(tuple(a * c for a in row) for row in self.coeffs))

    __rmul__ = __mul__

    @staticmethod
    def from_x_poly(p: UniPoly) -> BiPoly:
        """Embed a polynomial in x as a BiPoly constant in s."""
        return BiPoly(tuple((c,) for c in p.coeffs))

    @staticmethod
    def from_s_poly(p: UniPoly) -> BiPoly:
        """Embed a polynomial in s as a BiPoly constant in x."""
        return BiPoly((tuple(p.coeffs),) if not p.is_zero else ())


def bipoly_subst_s(a: BiPoly, sval: RationalLike) -> UniPoly:
    """Substitute a rational value for s, leaving a polynomial in x."""
    sval = Fraction(sval)
    out = []
    for row in a.coeffs:
        acc = Fraction(0)
        for c in reversed(row):
            acc = acc * sval + c
        out.append(acc)
    return UniPoly(tuple(out))


def bipoly_subst_x(a: BiPoly, xval: RationalLike) -> UniPoly:
    """Substitute a rational value for x, leaving a polynomial in s."""
    xval = Fraction(xval)
    if a.is_zero:
        return UniPoly()
    out = [Fraction(0)] * len(a.coeffs[0])
    power = Fraction(1)
    for row in a.coeffs:
        for j, c in enumerate(row):
            out[j] += c * power
        power *= xval
    return UniPoly(tuple(out))


def bipoly_shift_s(a: BiPoly, offset: RationalLike) -> BiPoly:
    """Compose s -> s + offset by exact binomial re-expansion of each s power."""
    offset = Fraction(offset)
    if a.is_zero or offset == 0:
        return a
    ncols = len(a.coeffs[0])
    # pascal[j][k] = C(j,k) * offset^(j-k), the expansion of (s + offset)^j
    pascal = []
    for j in range(ncols):
        pascal.append([math.comb(j, k) * offset ** (j - k) for k in range(j + 1)])
    out = []
    for row in a.coeffs:
        new_row = [Fraction(0)] * ncols
        for j, c in enumerate(row):
            if c == 0:
                continue
            for k, w in enumerate(pascal[j]):
                new_row[k] += c * w
        out.append(tuple(new_row))
    return BiPoly(tuple(out))


# ---------------------------------------------------------------------------
# truncated formal power series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerSeries:
    """Formal power series in t, exact through ``t**order``.

    ``coeffs`` always has exactly ``order + 1`` entries; the length is the
    precision bookkeeping, so trailing zeros are kept.
    """

    coeffs: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        cs = tuple(Fraction(c) for c in self.coeffs)
        if not cs:
            raise ValueError("a series needs at least its constant term")
        object.__setattr__(self, "coeffs", cs)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @staticmethod
    def one(order: int) -> PowerSeries:
        return PowerSeries((Fraction(1),) + (Fraction(0),) * order)


def series_truncate(a: PowerSeries, order: int) -> PowerSeries:
    if order > a.order:
        raise ValueError(f"cannot extend order {a.order} series to order {order}")
    return PowerSeries(a.coeffs[: order + 1])


def series_add(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    order = min(a.order, b.order)
    return PowerSeries(tuple(a.coeffs[k] + b.coeffs[k] for k in range(order + 1)))


def series_sub(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    order = min(a.order, b.order)
    return PowerSeries(tuple(a.coeffs[k] - b.coeffs[k] for k in range(order + 1)))


def series_scale(a: PowerSeries, c: RationalLike) -> PowerSeries:
    c = Fraction(c)
    return PowerSeries(tuple(c * x for x in a.coeffs))


def series_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    """Cauchy product, truncated to the smaller operand order."""
    order = min(a.order, b.order)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for k in range(order + 1):
        out.append(sum((ac[i] * bc[k - i] for i in range(k + 1)), Fraction(0)))
    return PowerSeries(tuple(out))


def series_invert(a: PowerSeries) -> PowerSeries:
    """Multiplicative inverse through a.order.

    Uses the triangular recurrence b_0 = 1/a_0,
    b_k = -(1/a_0) * sum_{j=1..k} a_j b_{k-j}; requires a nonzero constant
    term.
    """
    if a.coeffs[0] == 0:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv0 = 1 / a.coeffs[0]
    out = [inv0]
    for k in range(1, a.order + 1):
        acc = sum((a.coeffs[j] * out[k - j] for j in range(1, k + 1)), Fraction(0))
        out.append(-inv0 * acc)
    return PowerSeries(tuple(out))


def series_pow(a: PowerSeries, r: int) -> PowerSeries:
    """r-fold product of a with itself (binary exponentiation, exact)."""
    if r < 0:
        raise ValueError("exponent must be nonnegative")
    result = PowerSeries.one(a.order)
    base = a
    while r:
        if r & 1:
            result = series_mul(result, base)
        base = series_mul(base, base)
        r >>= 1
    return result


def exp_series(order: int) -> PowerSeries:
    """Taylor series of e**t: coefficient of t**k is 1/k!."""
    if order < 0:
        raise ValueError("order must be nonnegative")
    return PowerSeries(tuple(Fraction(1, math.factorial(k)) for k in range(order + 1)))


def pochhammer(a: RationalLike, n: int) -> Fraction:
    """Rising factorial a(a+1)...(a+n-1), with the empty product equal to 1."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a = Fraction(a)
    result = Fraction(1)
    for k in range(n):
        result *= a + k
    return result
