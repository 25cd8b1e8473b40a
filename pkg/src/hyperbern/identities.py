"""Exact certification of the identities satisfied by the tables in ``core``.

Every check compares independently computed exact rational values; there are
no tolerances anywhere.  A polynomial identity is certified either by
coefficientwise comparison, by exhaustive evaluation on an integer grid large
enough to pin the polynomial (per-variable degree d needs d+1 points per
variable), or by seeded random rational sample points when the grid would be
too large to be worth exhausting.

Checks return :class:`VerifyReport` records; :func:`run_suite` drives them
over parameter ranges deterministically, recording precondition violations
as skipped cells (never as passes).
"""

from __future__ import annotations

import hashlib
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    UniPoly,
    bipoly_subst_s,
    format_rational,
    poly_derivative,
    poly_eval,
    poly_integral_weighted,
    series_invert,
    series_mul,
    series_pow,
    series_truncate,
)
from .core import (
    HBNumberTable,
    HBPolyTable,
    a_poly,
    a_poly_at_zero,
    hb_higher_numbers,
    hb_higher_polys_recurrence,
    hb_higher_polys_series,
    hb_numbers,
    hb_order_step,
    hb_polys,
    normalized_denominator,
)

__all__ = [
    "VerifyReport",
    "SuiteConfig",
    "ALL_SUITES",
    "check_kamano",
    "check_sums_of_products",
    "check_two_three_sums",
    "check_ode",
    "check_recurrence_paths",
    "check_genfun_ode",
    "check_logderiv",
    "check_appell_basics",
    "run_suite",
    "replay",
    "perturbed_numbers",
]

PASS = "pass"
FAIL = "fail"
SKIPPED = "skipped"

GRID_POINT_LIMIT = 20_000  # auto mode: exhaustive grid up to this many points


@dataclass(frozen=True)
class VerifyReport:
    """Outcome of one identity instance.

    ``status`` is "pass", "fail", or "skipped" (precondition not met).  On
    failure ``counterexample`` holds the offending inputs and both sides'
    exact serialized values; re-running the same cell reproduces it exactly.
    ``details`` carries replay payload (mode, seed, sampled points) where the
    check involves sampling.
    """

    identity_name: str
    params: dict
    status: str
    cells_checked: int
    counterexample: dict | None = None
    details: dict | None = None


# ---------------------------------------------------------------------------
# shared helpers
# ---------------------------------------------------------------------------


def _inv_factorials(n: int) -> list[Fraction]:
    out = [Fraction(1)]
    for k in range(1, n + 1):
        out.append(out[-1] / k)
    return out


def _conv_trunc(a: list[Fraction], b: list[Fraction], n: int) -> list[Fraction]:
    out = []
    for k in range(n + 1):
        lo = max(0, k - len(b) + 1)
        acc = Fraction(0)
        for i in range(lo, min(k, len(a) - 1) + 1):
            acc += a[i] * b[k - i]
        out.append(acc)
    return out


def _dot_rev(a: list[Fraction], b: list[Fraction], n: int) -> Fraction:
    return sum((a[i] * b[n - i] for i in range(n + 1)), Fraction(0))


def _multinomial_sum(vectors: list[list[Fraction]], n: int) -> Fraction:
    """n! times the n-th coefficient of the product of the given vectors.

    Each vector holds values v[i] already divided by i!, so this equals the
    multinomial-weighted sum over all compositions i_1+...+i_r = n of the
    products v_1[i_1]...v_r[i_r] (the Cauchy product regroups exactly that
    sum; the test suite pins this against brute-force enumeration).
    """
    if len(vectors) == 1:
        return math.factorial(n) * vectors[0][n]
    conv = vectors[0]
    for v in vectors[1:-1]:
        conv = _conv_trunc(conv, v, n)
    return math.factorial(n) * _dot_rev(conv, vectors[-1], n)


class _MultinomialEvaluator:
    """Integer-scaled evaluation of the multinomial convolution of polynomial
    values at rational points.

    For a point x = a/b the vector entry p_i(x)/i! is represented as an
    integer u_i over the common scale M = D * n! * b^n (D clears every
    coefficient denominator), so the convolutions in the hot path run on
    plain integers; the exact rational reappears in one division at the end.
    The result is identical to :func:`_multinomial_sum` term by term, which
    the tests assert.
    """

    def __init__(self, polys, n: int):
        self.n = n
        self.fact_n = math.factorial(n)
        d = 1
        for p in polys[: n + 1]:
            for c in p.coeffs:
                d = math.lcm(d, c.denominator)
        self.denom_clear = d
        self.int_coeffs = [
            [c.numerator * (d // c.denominator) for c in p.coeffs]
            for p in polys[: n + 1]
        ]
        self.fall = [self.fact_n // math.factorial(i) for i in range(n + 1)]

    def vector(self, x: Fraction) -> tuple[list[int], int]:
        """(integer vector, its scale M): entry i is p_i(x)/i! times M."""
        n = self.n
        a, b = x.numerator, x.denominator
        apow = [1] * (n + 1)
        bpow = [1] * (n + 1)
        for k in range(1, n + 1):
            apow[k] = apow[k - 1] * a
            bpow[k] = bpow[k - 1] * b
        u = []
        for i, coeffs in enumerate(self.int_coeffs):
            val = 0
            for k, c in enumerate(coeffs):
                val += c * apow[k] * bpow[i - k]
            u.append(val * self.fall[i] * bpow[n - i])
        return u, self.denom_clear * self.fact_n * bpow[n]

    def combine(self, scaled_vectors) -> Fraction:
        """The multinomial sum over the given per-coordinate vectors."""
        n = self.n
        if len(scaled_vectors) == 1:
            u, m = scaled_vectors[0]
            return Fraction(self.fact_n * u[n], m)
        conv, m_total = scaled_vectors[0]
        for u, m in scaled_vectors[1:-1]:
            conv = _int_conv_trunc(conv, u, n)
            m_total *= m
        u, m = scaled_vectors[-1]
        m_total *= m
        return Fraction(self.fact_n * _int_dot_rev(conv, u, n), m_total)


def _int_conv_trunc(a: list[int], b: list[int], n: int) -> list[int]:
    out = []
    for k in range(n + 1):
        acc = 0
        for i in range(k + 1):
            acc += a[i] * b[k - i]
        out.append(acc)
    return out


def _int_dot_rev(a: list[int], b: list[int], n: int) -> int:
    return sum(a[i] * b[n - i] for i in range(n + 1))


def _cell_rng(seed: int, name: str, *index: int) -> random.Random:
    """Deterministic per-cell generator, independent of execution order."""
    key = f"{seed}:{name}:" + ":".join(str(i) for i in index)
    digest = hashlib.sha256(key.encode("utf-8")).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _random_rational(rng: random.Random) -> Fraction:
    # numerator and denominator both bounded by 100
    return Fraction(rng.randint(-100, 100), rng.randint(1, 100))


def _sub_s_value(N: int, r: int, n: int) -> int:
    """The integer substituted for s when the expansion is applied at index n."""
    return 1 + N * (r - 1) - n


def perturbed_numbers(N: int, k: int, n_top: int) -> HBNumberTable:
    """Number table with B[N,k] bumped by +1, for fault-sensitivity tests."""
    if k < 2:
        raise ValueError("only indices k >= 2 may be perturbed")
    base = hb_numbers(N, max(n_top, k))
    values = list(base.values)
    values[k] += 1
    return HBNumberTable(N=N, values=tuple(values))


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------


def check_kamano(N: int, r: int, n: int) -> VerifyReport:
    """Number sums-of-products: the multinomial convolution of r level-N
    number sequences against its closed form with x-free coefficient
    polynomials.  Requires n >= r-1."""
    if n < r - 1:
        raise ValueError(f"identity requires n >= r-1 (got n={n}, r={r})")
    params = {"N": N, "r": r, "n": n}
    values = hb_numbers(N, n).values
    inv_fact = _inv_factorials(n)
    vec = [values[i] * inv_fact[i] for i in range(n + 1)]
    lhs = _multinomial_sum([vec] * r, n)

    s_val = _sub_s_value(N, r, n)
    entries = a_poly_at_zero(N, r).entries
    rhs = Fraction(0)
    for i, entry in enumerate(entries):
        a_val = poly_eval(bipoly_subst_s(entry, s_val), 0)
        rhs += a_val * (-1) ** i * math.comb(n, i) * math.factorial(i) * values[n - i]
    rhs /= Fraction(N) ** (r - 1)

    if lhs == rhs:
        return VerifyReport("kamano", params, PASS, 1)
    counter = {"lhs": format_rational(lhs), "rhs": format_rational(rhs)}
    return VerifyReport("kamano", params, FAIL, 1, counterexample=counter)


def _sums_rhs_fn(N: int, r: int, n: int, polys1):
    """RHS of the polynomial sums-of-products identity as a function of the
    summed evaluation point."""
    s_val = _sub_s_value(N, r, n)
    a_sub = [bipoly_subst_s(e, s_val) for e in a_poly(N, r).entries]
    scale = Fraction(1, N ** (r - 1))

    def rhs_at(x: Fraction) -> Fraction:
        acc = Fraction(0)
        for i, a in enumerate(a_sub):
            acc += (
                poly_eval(a, x)
                * (-1) ** i
                * math.comb(n, i)
                * math.factorial(i)
                * poly_eval(polys1[n - i], x)
            )
        return acc * scale

    return rhs_at


def check_sums_of_products(
    N: int,
    r: int,
    n: int,
    mode: str = "grid",
    sample_count: int = 64,
    seed: int = 42,
) -> VerifyReport:
    """Polynomial sums-of-products identity at one (N, r, n) cell.

    The left side is evaluated two independent ways at every point: the
    direct multinomial convolution of order-1 polynomial values, and the
    collapse to the single order-r polynomial at the summed point.  Both must
    equal the closed form with the bivariate coefficient polynomials.

    grid mode evaluates the full integer grid {0..n}^r, a complete
    certification since every variable occurs with degree <= n; sample mode
    draws ``sample_count`` seeded rational points with numerator and
    denominator bounded by 100 and records them for replay.
    """
    if n < r - 1:
        raise ValueError(f"identity requires n >= r-1 (got n={n}, r={r})")
    if mode not in ("grid", "sample"):
        raise ValueError(f"unknown mode {mode!r}")
    params = {"N": N, "r": r, "n": n}
    polys1 = hb_polys(N, n).polys
    higher = hb_higher_polys_series(N, r, n).polys[n]
    rhs_at = _sums_rhs_fn(N, r, n, polys1)
    evaluator = _MultinomialEvaluator(polys1, n)
    fact_n = evaluator.fact_n

    def mismatch(point, lhs_direct, x_sum) -> dict | None:
        lhs_collapsed = poly_eval(higher, x_sum)
        rhs = rhs_at(x_sum)
        if lhs_direct == lhs_collapsed == rhs:
            return None
        return {
            "x_points": [format_rational(p) for p in point],
            "x_sum": format_rational(x_sum),
            "lhs_direct": format_rational(lhs_direct),
            "lhs_collapsed": format_rational(lhs_collapsed),
            "rhs": format_rational(rhs),
        }

    checked = 0
    if mode == "grid":
        details = {"mode": "grid"}
        vecs = [evaluator.vector(Fraction(g)) for g in range(n + 1)]
        scale = vecs[0][1]  # common to all integer points
        # the collapsed side and the closed form depend on the point only
        # through its sum; the direct side is still compared at every point
        side_cache: dict[int, tuple[Fraction, Fraction]] = {}

        def grid_mismatch(point, lhs_direct, x_sum: int) -> dict | None:
            if x_sum not in side_cache:
                xf = Fraction(x_sum)
                side_cache[x_sum] = (poly_eval(higher, xf), rhs_at(xf))
            lhs_collapsed, rhs = side_cache[x_sum]
            if lhs_direct == lhs_collapsed == rhs:
                return None
            return {
                "x_points": [format_rational(p) for p in point],
                "x_sum": format_rational(Fraction(x_sum)),
                "lhs_direct": format_rational(lhs_direct),
                "lhs_collapsed": format_rational(lhs_collapsed),
                "rhs": format_rational(rhs),
            }

        # iterate {0..n}^r with prefix convolutions shared along the odometer
        point: list[int] = [0] * r

        def walk(depth: int, conv: list[int], x_sum: int):
            nonlocal checked
            if depth == r - 1:
                for g in range(n + 1):
                    point[depth] = g
                    lhs = Fraction(
                        fact_n * _int_dot_rev(conv, vecs[g][0], n), scale ** r
                    )
                    checked += 1
                    bad = grid_mismatch(tuple(map(Fraction, point)), lhs, x_sum + g)
                    if bad is not None:
                        return bad
                return None
            for g in range(n + 1):
                point[depth] = g
                bad = walk(depth + 1, _int_conv_trunc(conv, vecs[g][0], n), x_sum + g)
                if bad is not None:
                    return bad
            return None

        counter = None
        for g in range(n + 1):
            point[0] = g
            if r == 1:
                checked += 1
                counter = grid_mismatch((Fraction(g),), evaluator.combine([vecs[g]]), g)
            else:
                counter = walk(1, vecs[g][0], g)
            if counter is not None:
                break
    else:
        rng = _cell_rng(seed, "sums", N, r, n)
        points = [
            tuple(_random_rational(rng) for _ in range(r)) for _ in range(sample_count)
        ]
        details = {
            "mode": "sample",
            "seed": seed,
            "sample_count": sample_count,
            "points": [[format_rational(c) for c in pt] for pt in points],
        }
        counter = None
        for pt in points:
            lhs = evaluator.combine([evaluator.vector(c) for c in pt])
            checked += 1
            counter = mismatch(pt, lhs, sum(pt, Fraction(0)))
            if counter is not None:
                break

    status = PASS if counter is None else FAIL
    return VerifyReport("sums", params, status, checked, counterexample=counter, details=details)


def check_two_three_sums(N: int, n: int) -> VerifyReport:
    """The explicit two-fold and three-fold closed forms.

    Two-fold (n >= 1):
        sum = (1/N)(N-n) B_n(x) + (n/N)(x-1) B_{n-1}(x)
    Three-fold (n >= 2):
        sum = (1/(2N^2)) [ (N-n)(2N-n) B_n(x)
              + n((2N-n)(x-1) + (x-2)(N-n+1)) B_{n-1}(x)
              + n(n-1)(x-1)(x-2) B_{n-2}(x) ]

    Certified on the integer grid; both sides are symmetric under permuting
    the evaluation points (the left side sums over all compositions, the
    right depends only on their sum), so sorted tuples cover the whole grid.
    """
    if n < 1:
        raise ValueError(f"identity requires n >= 1 (got n={n})")
    params = {"N": N, "n": n}
    polys1 = hb_polys(N, n).polys
    evaluator = _MultinomialEvaluator(polys1, n)
    fact_n = evaluator.fact_n
    vecs = [evaluator.vector(Fraction(g))[0] for g in range(n + 1)]
    scale = evaluator.denom_clear * fact_n  # integer grid points share this

    b_n, b_n1 = polys1[n], polys1[n - 1]
    b_n2 = polys1[n - 2] if n >= 2 else None

    def rhs_two(x: Fraction) -> Fraction:
        return (
            Fraction(N - n, N) * poly_eval(b_n, x)
            + Fraction(n, N) * (x - 1) * poly_eval(b_n1, x)
        )

    def rhs_three(x: Fraction) -> Fraction:
        acc = Fraction((N - n) * (2 * N - n)) * poly_eval(b_n, x)
        acc += (
            n
            * ((2 * N - n) * (x - 1) + (x - 2) * (N - n + 1))
            * poly_eval(b_n1, x)
        )
        acc += n * (n - 1) * (x - 1) * (x - 2) * poly_eval(b_n2, x)
        return acc / (2 * N * N)

    rhs2_at = [rhs_two(Fraction(x)) for x in range(2 * n + 1)]
    rhs3_at = [rhs_three(Fraction(x)) for x in range(3 * n + 1)] if n >= 2 else []

    checked = 0
    counter = None
    for g1 in range(n + 1):
        for g2 in range(g1, n + 1):
            lhs = Fraction(fact_n * _int_dot_rev(vecs[g1], vecs[g2], n), scale**2)
            checked += 1
            if lhs != rhs2_at[g1 + g2]:
                counter = {
                    "fold": 2,
                    "x_points": [str(g1), str(g2)],
                    "lhs": format_rational(lhs),
                    "rhs": format_rational(rhs2_at[g1 + g2]),
                }
                break
        if counter:
            break

    if counter is None and n >= 2:
        for g1 in range(n + 1):
            for g2 in range(g1, n + 1):
                conv12 = _int_conv_trunc(vecs[g1], vecs[g2], n)
                for g3 in range(g2, n + 1):
                    lhs = Fraction(fact_n * _int_dot_rev(conv12, vecs[g3], n), scale**3)
                    checked += 1
                    if lhs != rhs3_at[g1 + g2 + g3]:
                        counter = {
                            "fold": 3,
                            "x_points": [str(g1), str(g2), str(g3)],
                            "lhs": format_rational(lhs),
                            "rhs": format_rational(rhs3_at[g1 + g2 + g3]),
                        }
                        break
                if counter:
                    break
            if counter:
                break

    status = PASS if counter is None else FAIL
    return VerifyReport("two-three", params, status, checked, counterexample=counter)


def check_ode(N: int, r: int, n: int, numbers: HBNumberTable | None = None) -> VerifyReport:
    """Linear ODE satisfied by the order-r polynomial of index n:

        sum_{k=2..n} B[N,k]/k! y^(k) - (x/(rN) - 1/(N(N+1))) y' + (n/(rN)) y = 0

    The residual is assembled as an exact polynomial and must vanish
    identically.  A ``numbers`` table may be injected for fault testing.
    """
    if n < 1:
        raise ValueError(f"ODE check requires n >= 1 (got n={n})")
    params = {"N": N, "r": r, "n": n}
    values = (numbers or hb_numbers(N, n)).values
    y = hb_higher_polys_series(N, r, n).polys[n]

    residual = Fraction(n, r * N) * y
    yp = poly_derivative(y)
    # (x/(rN) - 1/(N(N+1))) y'
    lin = UniPoly((Fraction(-1, N * (N + 1)), Fraction(1, r * N)))
    residual = residual - lin * yp
    dk = yp
    for k in range(2, n + 1):
        dk = poly_derivative(dk)
        residual = residual + values[k] / math.factorial(k) * dk

    if residual.is_zero:
        return VerifyReport("ode", params, PASS, 1)
    counter = {"residual_coeffs": [format_rational(c) for c in residual.coeffs]}
    return VerifyReport("ode", params, FAIL, 1, counterexample=counter)


def check_recurrence_paths(
    N: int, r: int, n_max: int, numbers: HBNumberTable | None = None
) -> VerifyReport:
    """Coefficientwise agreement of three independent constructions of the
    order-r table: the series path, the linear recurrence, and the iterated
    order-raising step from the order-1 table.  An injected ``numbers`` table
    feeds only the recurrence path."""
    params = {"N": N, "r": r, "n_max": n_max}
    series_polys = hb_higher_polys_series(N, r, n_max).polys
    rec_polys = hb_higher_polys_recurrence(N, r, n_max, numbers=numbers).polys

    step_table = hb_polys(N, n_max)
    for _ in range(r - 1):
        step_table = HBPolyTable(
            N=N,
            r=step_table.r + 1,
            polys=tuple(hb_order_step(step_table, n) for n in range(n_max + 1)),
        )
    step_polys = step_table.polys

    counter = None
    for n in range(n_max + 1):
        if not (series_polys[n] == rec_polys[n] == step_polys[n]):
            counter = {
                "n": n,
                "series": [format_rational(c) for c in series_polys[n].coeffs],
                "recurrence": [format_rational(c) for c in rec_polys[n].coeffs],
                "order_step": [format_rational(c) for c in step_polys[n].coeffs],
            }
            break

    status = PASS if counter is None else FAIL
    return VerifyReport("recurrence", params, status, n_max + 1, counterexample=counter)


def check_genfun_ode(N: int, order: int) -> VerifyReport:
    """First-order relation for the reciprocal series F (cleared of 1/t):

        t F' = N F - t F - N F^2

    verified coefficientwise through the truncation order."""
    if order < 2:
        raise ValueError(f"generating-function ODE check requires order >= 2 (got {order})")
    params = {"N": N, "order": order}
    f = series_invert(normalized_denominator(N, order))
    f2 = series_mul(f, f)
    counter = None
    for k in range(order + 1):
        lhs = k * f.coeffs[k]
        rhs = N * f.coeffs[k] - (f.coeffs[k - 1] if k else Fraction(0)) - N * f2.coeffs[k]
        if lhs != rhs:
            counter = {"k": k, "lhs": format_rational(lhs), "rhs": format_rational(rhs)}
            break
    status = PASS if counter is None else FAIL
    return VerifyReport("genfun-ode", params, status, order + 1, counterexample=counter)


def check_logderiv(N: int, r: int, order: int) -> VerifyReport:
    """Logarithmic derivative of the order-r generating factor A = F^r:

        A'/A = r ( -1/(N+1) - N sum_{m>=1} B[N,m+1]/(m+1) t^m/m! )

    compared coefficientwise through the truncation order."""
    if order < 1:
        raise ValueError(f"log-derivative check requires order >= 1 (got {order})")
    params = {"N": N, "r": r, "order": order}
    f = series_invert(normalized_denominator(N, order + 1))
    a = series_pow(f, r)
    a_prime = [k * a.coeffs[k] for k in range(1, order + 2)]  # exact through t^order
    a_inv = series_invert(series_truncate(a, order))
    lhs = [
        sum((a_prime[i] * a_inv.coeffs[k - i] for i in range(k + 1)), Fraction(0))
        for k in range(order + 1)
    ]

    values = hb_numbers(N, order + 1).values
    rhs = [Fraction(-r, N + 1)]
    for m in range(1, order + 1):
        rhs.append(-r * N * values[m + 1] / ((m + 1) * math.factorial(m)))

    counter = None
    for k in range(order + 1):
        if lhs[k] != rhs[k]:
            counter = {"k": k, "lhs": format_rational(lhs[k]), "rhs": format_rational(rhs[k])}
            break
    status = PASS if counter is None else FAIL
    return VerifyReport("logderiv", params, status, order + 1, counterexample=counter)


def check_appell_basics(N: int, r: int, n_max: int) -> VerifyReport:
    """Structural Appell-sequence properties of the order-r table.

    Bundles: the derivative chain (the p-th derivative of index n equals
    n!/(n-p)! times index n-p, for all 0 <= p <= n), monicity with the exact
    degree, value-at-zero consistency with the number table, and (order 1
    only) the weighted zero-mean condition: the (1-x)^(N-1)-weighted integral
    over [0,1] is 1/N at n = 0 and 0 for n > 0.
    """
    params = {"N": N, "r": r, "n_max": n_max}
    table = hb_higher_polys_series(N, r, n_max)
    values = hb_higher_numbers(N, r, n_max).values

    checked = 0

    def fail(kind: str, **data) -> VerifyReport:
        counter = {"property": kind, **data}
        return VerifyReport("appell", params, FAIL, checked, counterexample=counter)

    for n, p in enumerate(table.polys):
        checked += 1
        if p.degree != n or p.leading_coefficient != 1:
            return fail("monic", n=n, coeffs=[format_rational(c) for c in p.coeffs])
        checked += 1
        if poly_eval(p, 0) != values[n]:
            return fail(
                "value_at_zero",
                n=n,
                poly_value=format_rational(poly_eval(p, 0)),
                number=format_rational(values[n]),
            )
        dp = p
        for step in range(1, n + 1):
            dp = poly_derivative(dp)
            expect = Fraction(math.factorial(n), math.factorial(n - step)) * table.polys[n - step]
            checked += 1
            if dp != expect:
                return fail(
                    "derivative_chain",
                    n=n,
                    p=step,
                    got=[format_rational(c) for c in dp.coeffs],
                    expected=[format_rational(c) for c in expect.coeffs],
                )
        if r == 1:
            integral = poly_integral_weighted(p, N)
            expect_int = Fraction(1, N) if n == 0 else Fraction(0)
            checked += 1
            if integral != expect_int:
                return fail(
                    "weighted_integral",
                    n=n,
                    got=format_rational(integral),
                    expected=format_rational(expect_int),
                )

    return VerifyReport("appell", params, PASS, checked)


# ---------------------------------------------------------------------------
# suite driver
# ---------------------------------------------------------------------------

ALL_SUITES = (
    "kamano",
    "sums",
    "two-three",
    "ode",
    "recurrence",
    "genfun-ode",
    "logderiv",
    "appell",
)


@dataclass(frozen=True)
class SuiteConfig:
    """Parameter ranges and sampling policy for :func:`run_suite`.

    ``N_max``, ``r_max`` and ``n_max`` override the per-suite desk defaults
    (which mirror the ranges certified by the acceptance tests); ``n_max``
    doubles as the truncation order for the series-based checks and as the
    table size for the table-wide checks.  mode applies to the polynomial
    sums-of-products family: "auto" picks the exhaustive grid whenever it has
    at most ``GRID_POINT_LIMIT`` points and sampling otherwise.
    """

    suites: tuple[str, ...] = ALL_SUITES
    N_max: int | None = None
    r_max: int | None = None
    n_max: int | None = None
    mode: str = "auto"
    seed: int = 42
    sample_count: int = 64
    fault: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        unknown = set(self.suites) - set(ALL_SUITES)
        if unknown:
            raise ValueError(f"unknown suites: {sorted(unknown)}")
        if self.mode not in ("auto", "grid", "sample"):
            raise ValueError(f"unknown mode {self.mode!r}")
        for name in ("N_max", "r_max", "n_max"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError(f"{name} must be nonnegative")
        if self.sample_count < 1:
            raise ValueError("sample_count must be positive")


def _skip(name: str, params: dict, reason: str) -> VerifyReport:
    return VerifyReport(name, params, SKIPPED, 0, details={"reason": reason})


def _fault_table(cfg: SuiteConfig, N: int, n_top: int) -> HBNumberTable | None:
    if cfg.fault is None or cfg.fault[0] != N:
        return None
    return perturbed_numbers(N, cfg.fault[1], n_top)


def _run_kamano(cfg: SuiteConfig) -> list[VerifyReport]:
    n_hi = cfg.n_max if cfg.n_max is not None else 24
    out = []
    for N in range(1, (cfg.N_max if cfg.N_max is not None else 4) + 1):
        for r in range(1, (cfg.r_max if cfg.r_max is not None else 4) + 1):
            for n in range(n_hi + 1):
                if n < r - 1:
                    out.append(_skip("kamano", {"N": N, "r": r, "n": n}, "requires n >= r-1"))
                else:
                    out.append(check_kamano(N, r, n))
    return out


def _run_sums(cfg: SuiteConfig) -> list[VerifyReport]:
    if cfg.N_max is None and cfg.r_max is None and cfg.n_max is None:
        cells = [
            (N, r, n)
            for N in range(1, 4)
            for r in range(1, 4)
            for n in range(11)
        ] + [(N, 4, n) for N in range(1, 5) for n in range(17)]
    else:
        cells = [
            (N, r, n)
            for N in range(1, (cfg.N_max if cfg.N_max is not None else 4) + 1)
            for r in range(1, (cfg.r_max if cfg.r_max is not None else 4) + 1)
            for n in range((cfg.n_max if cfg.n_max is not None else 16) + 1)
        ]
    out = []
    for N, r, n in sorted(set(cells)):
        if n < r - 1:
            out.append(_skip("sums", {"N": N, "r": r, "n": n}, "requires n >= r-1"))
            continue
        if cfg.mode == "auto":
            mode = "grid" if (n + 1) ** r <= GRID_POINT_LIMIT else "sample"
        else:
            mode = cfg.mode
        out.append(
            check_sums_of_products(
                N, r, n, mode=mode, sample_count=cfg.sample_count, seed=cfg.seed
            )
        )
    return out


def _run_two_three(cfg: SuiteConfig) -> list[VerifyReport]:
    n_hi = cfg.n_max if cfg.n_max is not None else 20
    out = []
    for N in range(1, (cfg.N_max if cfg.N_max is not None else 4) + 1):
        for n in range(n_hi + 1):
            if n < 1:
                out.append(_skip("two-three", {"N": N, "n": n}, "requires n >= 1"))
            else:
                out.append(check_two_three_sums(N, n))
    return out


def _run_ode(cfg: SuiteConfig) -> list[VerifyReport]:
    n_hi = cfg.n_max if cfg.n_max is not None else 15
    out = []
    for N in range(1, (cfg.N_max if cfg.N_max is not None else 4) + 1):
        injected = _fault_table(cfg, N, n_hi)
        for r in range(1, (cfg.r_max if cfg.r_max is not None else 3) + 1):
            for n in range(n_hi + 1):
                if n < 1:
                    out.append(_skip("ode", {"N": N, "r": r, "n": n}, "requires n >= 1"))
                else:
                    out.append(check_ode(N, r, n, numbers=injected))
    return out


def _run_recurrence(cfg: SuiteConfig) -> list[VerifyReport]:
    n_max = cfg.n_max if cfg.n_max is not None else 30
    out = []
    for N in range(1, (cfg.N_max if cfg.N_max is not None else 4) + 1):
        injected = _fault_table(cfg, N, n_max + 1)
        for r in range(1, (cfg.r_max if cfg.r_max is not None else 4) + 1):
            out.append(check_recurrence_paths(N, r, n_max, numbers=injected))
    return out


def _run_genfun(cfg: SuiteConfig) -> list[VerifyReport]:
    order = cfg.n_max if cfg.n_max is not None else 30
    out = []
    for N in range(1, (cfg.N_max if cfg.N_max is not None else 5) + 1):
        if order < 2:
            out.append(_skip("genfun-ode", {"N": N, "order": order}, "requires order >= 2"))
        else:
            out.append(check_genfun_ode(N, order))
    return out


def _run_logderiv(cfg: SuiteConfig) -> list[VerifyReport]:
    order = cfg.n_max if cfg.n_max is not None else 30
    out = []
    for N in range(1, (cfg.N_max if cfg.N_max is not None else 4) + 1):
        for r in range(1, (cfg.r_max if cfg.r_max is not None else 3) + 1):
            if order < 1:
                out.append(
                    _skip("logderiv", {"N": N, "r": r, "order": order}, "requires order >= 1")
                )
            else:
                out.append(check_logderiv(N, r, order))
    return out


def _run_appell(cfg: SuiteConfig) -> list[VerifyReport]:
    n_max = cfg.n_max if cfg.n_max is not None else 20
    out = []
    for N in range(1, (cfg.N_max if cfg.N_max is not None else 5) + 1):
        for r in range(1, (cfg.r_max if cfg.r_max is not None else 3) + 1):
            out.append(check_appell_basics(N, r, n_max))
    return out


_SUITE_RUNNERS = {
    "kamano": _run_kamano,
    "sums": _run_sums,
    "two-three": _run_two_three,
    "ode": _run_ode,
    "recurrence": _run_recurrence,
    "genfun-ode": _run_genfun,
    "logderiv": _run_logderiv,
    "appell": _run_appell,
}


def _report_key(rep: VerifyReport):
    p = rep.params
    return (
        rep.identity_name,
        p.get("N", 0),
        p.get("r", 0),
        p.get("n", p.get("n_max", p.get("order", 0))),
    )


def run_suite(config: SuiteConfig = SuiteConfig()) -> list[VerifyReport]:
    """Run the selected suites over their ranges; deterministic given the seed.

    Cells whose preconditions fail are reported as skipped, never as passed.
    Reports come back sorted by (suite, N, r, index).
    """
    reports: list[VerifyReport] = []
    for suite in config.suites:
        reports.extend(_SUITE_RUNNERS[suite](config))
    reports.sort(key=_report_key)
    return reports


def replay(report: VerifyReport, fault: tuple[int, int] | None = None) -> bool:
    """Re-run the cell a report came from and confirm the identical outcome.

    For failed reports this reproduces the counterexample exactly (sampling
    is reseeded from the recorded seed).  ``fault`` must be supplied if the
    original run injected one.
    """
    p = report.params
    name = report.identity_name
    if name == "kamano":
        fresh = check_kamano(p["N"], p["r"], p["n"])
    elif name == "sums":
        d = report.details or {}
        fresh = check_sums_of_products(
            p["N"],
            p["r"],
            p["n"],
            mode=d.get("mode", "grid"),
            sample_count=d.get("sample_count", 64),
            seed=d.get("seed", 42),
        )
    elif name == "two-three":
        fresh = check_two_three_sums(p["N"], p["n"])
    elif name == "ode":
        numbers = None
        if fault is not None and fault[0] == p["N"]:
            numbers = perturbed_numbers(p["N"], fault[1], p["n"])
        fresh = check_ode(p["N"], p["r"], p["n"], numbers=numbers)
    elif name == "recurrence":
        numbers = None
        if fault is not None and fault[0] == p["N"]:
            numbers = perturbed_numbers(p["N"], fault[1], p["n_max"] + 1)
        fresh = check_recurrence_paths(p["N"], p["r"], p["n_max"], numbers=numbers)
    elif name == "genfun-ode":
        fresh = check_genfun_ode(p["N"], p["order"])
    elif name == "logderiv":
        fresh = check_logderiv(p["N"], p["r"], p["order"])
    elif name == "appell":
        fresh = check_appell_basics(p["N"], p["r"], p["n_max"])
    else:
        raise ValueError(f"cannot replay unknown identity {name!r}")
    return fresh.status == report.status and fresh.counterexample == report.counterexample
