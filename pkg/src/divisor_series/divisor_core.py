"""Integer ground truth: divisor counts, their partial sums, and the
part-count statistics of partitions into distinct parts.

Everything here is exact integer arithmetic (Python integers are unbounded,
so there is no silent wraparound to guard against).
"""

from __future__ import annotations

from dataclasses import dataclass

from .intervals import DomainError


@dataclass(frozen=True)
class DivisorTable:
    """d[k] = number of positive divisors of k, for 1 <= k <= n_max.

    Index 0 is a sentinel with d[0] = 0, which is also the convention the
    power-series layer uses for the constant coefficient of T.
    """

    n_max: int
    d: tuple[int, ...]

    def __post_init__(self):
        if self.n_max < 1:
            raise DomainError("n_max must be >= 1")
        if len(self.d) != self.n_max + 1 or self.d[0] != 0:
            raise ValueError("divisor table malformed")


@dataclass(frozen=True)
class PartitionStats:
    """Part counts over partitions into distinct parts, split by parity.

    s_odd[k] sums the number of parts over all partitions of k into an odd
    number of distinct parts; s_even[k] does the same for an even number of
    parts.  Index 0 is an unused sentinel.
    """

    n_max: int
    s_odd: tuple[int, ...]
    s_even: tuple[int, ...]


def divisor_sieve(n_max: int) -> DivisorTable:
    """Divisor-count table via the multiples sieve, O(n log n) increments."""
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    d = [0] * (n_max + 1)
    for k in range(1, n_max + 1):
        for m in range(k, n_max + 1, k):
            d[m] += 1
    return DivisorTable(n_max=n_max, d=tuple(d))


def divisor_partial_sums(table: DivisorTable) -> tuple[int, ...]:
    """out[n] = sum_{k<=n} d(k); out[0] = 0.

    By counting lattice points under the hyperbola xy <= n both ways, the
    result also equals sum_{k<=n} floor(n/k) for every n (the test suite
    checks this against the floor-sum directly).
    """
    out = [0] * (table.n_max + 1)
    acc = 0
    for n in range(1, table.n_max + 1):
        acc += table.d[n]
        out[n] = acc
    return tuple(out)


def floor_sum(n: int) -> int:
    """sum_{k=1}^{n} floor(n/k) -- independent oracle for the partial sums."""
    return sum(n // k for k in range(1, n + 1))


def distinct_partition_stats(n_max: int) -> PartitionStats:
    """Part-count statistics via a part-count-tracking dynamic program.

    dp[m][n] counts partitions of n into exactly m distinct parts; parts are
    introduced one at a time (0/1 knapsack order) so each is used at most
    once.  The number of parts m never exceeds ~sqrt(2 n_max).
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    m_cap = 1
    while (m_cap + 1) * (m_cap + 2) // 2 <= n_max:
        m_cap += 1
    dp = [[0] * (n_max + 1) for _ in range(m_cap + 1)]
    dp[0][0] = 1
    for part in range(1, n_max + 1):
        for m in range(m_cap, 0, -1):
            row, prev = dp[m], dp[m - 1]
            for n in range(n_max, part - 1, -1):
                c = prev[n - part]
                if c:
                    row[n] += c
    s_odd = [0] * (n_max + 1)
    s_even = [0] * (n_max + 1)
    for m in range(1, m_cap + 1):
        target = s_odd if m % 2 else s_even
        row = dp[m]
        for n in range(1, n_max + 1):
            if row[n]:
                target[n] += m * row[n]
    return PartitionStats(n_max=n_max, s_odd=tuple(s_odd), s_even=tuple(s_even))


def distinct_partition_stats_enumerated(n_max: int) -> PartitionStats:
    """Same statistics by exhaustive enumeration of distinct partitions.

    Exponential in n_max; meant as an independent cross-check for small
    orders (the suite compares it with the dynamic program up to 40).
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    s_odd = [0] * (n_max + 1)
    s_even = [0] * (n_max + 1)

    def extend(remaining: int, min_part: int, parts: int, total: int):
        # `total` is the full partition size once `remaining` reaches 0
        if remaining == 0:
            if parts % 2:
                s_odd[total] += parts
            else:
                s_even[total] += parts
            return
        for p in range(min_part, remaining + 1):
            extend(remaining - p, p + 1, parts + 1, total)

    for n in range(1, n_max + 1):
        extend(n, 1, 0, n)
    return PartitionStats(n_max=n_max, s_odd=tuple(s_odd), s_even=tuple(s_even))
