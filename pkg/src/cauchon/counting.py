"""Closed-form counts: Stirling numbers, poly-Bernoulli B_n^(-n), rank counts.

Everything is exact integer arithmetic.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod
from typing import Iterator, Sequence


class BadComposition(ValueError):
    pass


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    """S(n, k) via S(n, k) = k S(n-1, k) + S(n-1, k-1)."""
    if n < 0 or k < 0:
        raise ValueError("stirling2 needs non-negative arguments")
    if n == 0 or k == 0:
        return int(n == k)
    if k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def stirling2_inclusion_exclusion(n: int, k: int) -> int:
    """(-1)^k / k! * sum_j (-1)^j C(k, j) j^n."""
    s = sum((-1) ** j * comb(k, j) * j**n for j in range(k + 1))
    q, rem = divmod((-1) ** k * s, factorial(k))
    assert rem == 0
    return q


def cauchon_S(n: int) -> int:
    """Cauchon's count of H-primes: a double alternating sum."""
    if n < 1:
        raise ValueError("n must be positive")
    total = 0
    for k in range(1, n + 1):
        inner = sum((-1) ** (j - 1) * comb(k, j) * j**n for j in range(1, k + 1))
        total += (k + 1) ** n * inner
    return (-1) ** (n - 1) * total


def poly_bernoulli_nn(n: int) -> int:
    """B_n^(-n) = (-1)^n sum_k (-1)^k k! (k+1)^n S(n, k)."""
    if n < 1:
        raise ValueError("n must be positive")
    return (-1) ** n * sum((-1) ** k * factorial(k) * (k + 1) ** n * stirling2(n, k) for k in range(1, n + 1))


def rank_count(n: int, t: int) -> int:
    if not 0 <= t <= n:
        raise ValueError(f"t must lie in [0, {n}]")
    return (factorial(t) * stirling2(n + 1, t + 1)) ** 2


def kaneko_sum_squares(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    return sum(rank_count(n, t) for t in range(n + 1))


def gamma_size(n: int, r: Sequence[int]) -> int:
    """1^r1 2^(r2-r1) ... t^(rt - r(t-1)) (t+1)^(n - rt)."""
    r = tuple(r)
    if any(not (1 <= x <= n) for x in r) or any(x >= y for x, y in zip(r, r[1:])):
        raise ValueError(f"r={r} must be strictly increasing in [1, {n}]")
    ext = (0,) + r + (n,)
    return prod((l + 1) ** (ext[l + 1] - ext[l]) for l in range(len(r) + 1))


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Compositions of ``total`` into ``parts`` positive parts, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cuts in combinations(range(1, total), parts - 1):
        ext = (0,) + cuts + (total,)
        yield tuple(b - a for a, b in zip(ext, ext[1:]))


def composition_to_r(a: Sequence[int]) -> tuple[int, ...]:
    """(a1, ..., a_{t+1}) -> (a1, a1+a2, ..., a1+...+at); n is sum(a) - 1."""
    a = tuple(a)
    if not a or any(x < 1 for x in a):
        raise BadComposition(f"{a} must have at least one part, all positive")
    out, s = [], 0
    for x in a[:-1]:
        s += x
        out.append(s)
    return tuple(out)


def r_to_composition(n: int, r: Sequence[int]) -> tuple[int, ...]:
    r = tuple(r)
    if any(not (1 <= x <= n) for x in r) or any(x >= y for x, y in zip(r, r[1:])):
        raise BadComposition(f"r={r} must be strictly increasing in [1, {n}]")
    ext = (0,) + r + (n + 1,)
    return tuple(b - a for a, b in zip(ext, ext[1:]))


def check_composition(a: Sequence[int], n: int) -> None:
    if any(x < 1 for x in a) or sum(a) != n + 1:
        raise BadComposition(f"{tuple(a)} is not a composition of {n + 1} into positive parts")


def stirling_composition_sum(n: int, t: int) -> int:
    """sum over compositions a of n+1 into t+1 parts of prod (k)^(a_k - 1)."""
    return sum(prod((k + 1) ** (x - 1) for k, x in enumerate(a)) for a in compositions(n + 1, t + 1))


def gamma_sum(n: int, t: int) -> int:
    """sum over r in R_t of |Gamma_r|; R_0 is the empty sequence alone."""
    return sum(gamma_size(n, r) for r in combinations(range(1, n + 1), t))


def total_counts(n: int) -> dict[str, int]:
    return {
        "cauchon": cauchon_S(n),
        "poly_bernoulli": poly_bernoulli_nn(n),
        "sum_of_squares": kaneko_sum_squares(n),
    }
