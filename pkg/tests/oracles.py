"""Independent reference computations used to pin expected test values.

Nothing here touches the package's series or recurrence engines: the
classical Bernoulli numbers come from the binomial-sum recurrence, the
multinomial sums from literal composition enumeration, and the weighted
moments from the Beta-function closed form.
"""

from __future__ import annotations

import math
from fractions import Fraction

from hyperbern.algebra import UniPoly


def classical_bernoulli(n_max: int) -> list[Fraction]:
    """B_0..B_n via sum_{k=0..n} C(n+1,k) B_k = 0 (so B_1 = -1/2)."""
    values = [Fraction(1)]
    for n in range(1, n_max + 1):
        acc = sum(
            (math.comb(n + 1, k) * values[k] for k in range(n)), Fraction(0)
        )
        values.append(-acc / (n + 1))
    return values


# Closed forms for the first few classical Bernoulli polynomials.
CLASSICAL_BERNOULLI_POLYS = [
    UniPoly((1,)),
    UniPoly((Fraction(-1, 2), 1)),
    UniPoly((Fraction(1, 6), -1, 1)),
    UniPoly((0, Fraction(1, 2), Fraction(-3, 2), 1)),
    UniPoly((Fraction(-1, 30), 0, 1, -2, 1)),
]


def compositions(n: int, parts: int):
    """All tuples of `parts` nonnegative integers summing to n."""
    if parts == 1:
        yield (n,)
        return
    for head in range(n + 1):
        for rest in compositions(n - head, parts - 1):
            yield (head,) + rest


def multinomial_sum_bruteforce(vectors: list[list[Fraction]], n: int) -> Fraction:
    """sum over i_1+...+i_r = n of n!/(i_1!...i_r!) * prod_j vectors[j][i_j].

    ``vectors[j][i]`` holds the plain (unscaled) value of the j-th factor at
    index i.
    """
    total = Fraction(0)
    fact_n = math.factorial(n)
    for combo in compositions(n, len(vectors)):
        weight = fact_n
        for i in combo:
            weight //= math.factorial(i)
        term = Fraction(weight)
        for vec, i in zip(vectors, combo):
            term *= vec[i]
        total += term
    return total


def beta_moment(k: int, n_weight: int) -> Fraction:
    """integral_0^1 x^k (1-x)^(n_weight-1) dx = k! (n_weight-1)! / (k+n_weight)!."""
    return Fraction(
        math.factorial(k) * math.factorial(n_weight - 1),
        math.factorial(k + n_weight),
    )
