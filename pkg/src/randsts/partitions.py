"""Integer partitions as plain tuples, Young-diagram cell statistics and
conjugacy-class sizes of S_n.

A partition is a weakly decreasing tuple of positive ints; ``()`` is the empty
partition. All counts are exact Python integers.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Iterator, Sequence

from .permcore import Permutation, RngStream

__all__ = [
    "partition",
    "parse_partition",
    "format_partition",
    "cycle_counts",
    "from_cycle_counts",
    "conjugate",
    "is_even_class",
    "centralizer_size",
    "class_size",
    "CellStats",
    "hooks_and_contents",
    "hook_product",
    "all_partitions",
    "count_partitions_max_parts",
    "unrank_partition_max_parts",
    "sample_partition_max_parts",
    "canonical_representative",
    "largest_classes",
    "iroot_floor",
    "max_parts_for_exponent",
]


def partition(parts: Sequence[int]) -> tuple:
    """Validate and normalize: trailing zeros dropped, must be weakly decreasing."""
    out = tuple(int(p) for p in parts)
    while out and out[-1] == 0:
        out = out[:-1]
    for a, b in zip(out, out[1:]):
        if a < b:
            raise ValueError(f"parts must be weakly decreasing: {out}")
    if out and out[-1] < 0:
        raise ValueError(f"parts must be positive: {out}")
    return out


def parse_partition(text: str) -> tuple:
    """Parse dot notation ``"3.2.2.2"``; ``"-"`` is the empty partition."""
    text = text.strip()
    if text in ("-", ""):
        return ()
    try:
        parts = [int(t) for t in text.split(".")]
    except ValueError:
        raise ValueError(f"malformed partition {text!r}") from None
    if any(p <= 0 for p in parts):
        raise ValueError(f"malformed partition {text!r}: parts must be positive")
    return partition(parts)


def format_partition(lam: Sequence[int]) -> str:
    return ".".join(map(str, lam)) if lam else "-"


def cycle_counts(lam: Sequence[int]) -> list:
    """(a_1, ..., a_n) with a_k the number of parts equal to k."""
    n = sum(lam)
    a = [0] * n
    for p in lam:
        a[p - 1] += 1
    return a


def from_cycle_counts(a: Sequence[int]) -> tuple:
    return tuple(k for k in range(len(a), 0, -1) for _ in range(a[k - 1]))


def conjugate(lam: Sequence[int]) -> tuple:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def is_even_class(lam: Sequence[int]) -> bool:
    """True when the class lies in A_n, i.e. n - (number of parts) is even."""
    return (sum(lam) - len(lam)) % 2 == 0


def centralizer_size(lam: Sequence[int]) -> int:
    """z_mu = prod k^{a_k} a_k!."""
    return prod(k**a * factorial(a) for k, a in Counter(lam).items())


def class_size(mu: Sequence[int]) -> int:
    """|K_mu| = n! / z_mu."""
    return factorial(sum(mu)) // centralizer_size(mu)


@dataclass(frozen=True)
class CellStats:
    """Row-major hooks and contents of a Young diagram."""

    shape: tuple
    hooks: tuple  # tuple of rows
    contents: tuple

    @property
    def hook_product(self) -> int:
        return prod(h for row in self.hooks for h in row)

    def cells(self):
        for i, row in enumerate(self.shape):
            for j in range(row):
                yield i, j, self.hooks[i][j], self.contents[i][j]


def hooks_and_contents(lam: Sequence[int]) -> CellStats:
    lam = partition(lam)
    conj = conjugate(lam)
    hooks = tuple(
        tuple(row - j + conj[j] - i - 1 for j in range(row)) for i, row in enumerate(lam)
    )
    contents = tuple(tuple(j - i for j in range(row)) for i, row in enumerate(lam))
    return CellStats(lam, hooks, contents)


@lru_cache(maxsize=None)
def hook_product(lam: tuple) -> int:
    return hooks_and_contents(lam).hook_product


def all_partitions(n: int) -> Iterator[tuple]:
    """Every partition of n once, in reverse lexicographic order:
    (n), (n-1,1), (n-2,2), (n-2,1,1), ..., (1^n)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    if n == 0:
        yield ()
        return
    # iterative reverse-lex successor
    a = [n]
    while True:
        yield tuple(a)
        # strip trailing ones
        ones = 0
        while a and a[-1] == 1:
            a.pop()
            ones += 1
        if not a:
            return
        k = a.pop() - 1
        rem = ones + 1
        a.append(k)
        while rem > k:
            a.append(k)
            rem -= k
        if rem:
            a.append(rem)


@lru_cache(maxsize=64)
def _bounded_table(n: int, k: int) -> tuple:
    """table[m][j] = number of partitions of m with at most j parts."""
    table = [[0] * (k + 1) for _ in range(n + 1)]
    for j in range(k + 1):
        table[0][j] = 1
    for m in range(1, n + 1):
        for j in range(1, k + 1):
            table[m][j] = table[m][j - 1] + (table[m - j][j] if m >= j else 0)
    return tuple(tuple(r) for r in table)


def count_partitions_max_parts(n: int, k: int) -> int:
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    k = min(k, n) if n > 0 else k
    return _bounded_table(n, k)[n][k]


def unrank_partition_max_parts(n: int, k: int, rank: int) -> tuple:
    """Inverse of the recursion p(n,k) = p(n,k-1) + p(n-k,k).

    Ranks below p(n,k-1) have at most k-1 parts; the rest have exactly k parts
    and lose one cell per row.
    """
    if n > 0:
        k = min(k, n)
    table = _bounded_table(n, k)
    total = table[n][k]
    if not 0 <= rank < total:
        raise IndexError(f"rank {rank} out of range for {total} partitions")
    parts = [0] * k
    m, j = n, k
    while m > 0:
        below = table[m][j - 1]
        if rank < below:
            j -= 1
        else:
            rank -= below
            for r in range(j):
                parts[r] += 1
            m -= j
    return partition(parts)


def sample_partition_max_parts(n: int, k: int, rng: RngStream) -> tuple:
    """Uniform partition of n with at most k parts."""
    total = count_partitions_max_parts(n, k)
    if total == 0:
        raise ValueError(f"no partitions of {n} with at most {k} parts")
    return unrank_partition_max_parts(n, k, rng.randbelow(total))


def canonical_representative(mu: Sequence[int]) -> Permutation:
    """Cycles of lengths mu_1 >= mu_2 >= ... filled with 1..n in order."""
    mu = partition(mu)
    if not mu:
        raise ValueError("empty partition has no representative")
    img = []
    start = 0
    for length in mu:
        img.extend(range(start + 1, start + length))
        img.append(start)
        start += length
    return Permutation(img, zero_based=True)


def largest_classes(n: int, count: int) -> list:
    """Top ``count`` (partition, class size) pairs; ties keep reverse-lex order."""
    if n < 1:
        raise ValueError("n must be at least 1")
    sized = [(mu, class_size(mu)) for mu in all_partitions(n)]
    sized.sort(key=lambda t: -t[1])  # stable: reverse-lex tie-break
    return sized[:count]


def iroot_floor(x: int, b: int) -> int:
    """floor(x ** (1/b)) for integers x >= 0, b >= 1."""
    if x < 0 or b < 1:
        raise ValueError("need x >= 0 and b >= 1")
    if x < 2:
        return x
    r = int(round(x ** (1.0 / b)))
    while r**b > x:
        r -= 1
    while (r + 1) ** b <= x:
        r += 1
    return r


def max_parts_for_exponent(n: int, num: int, den: int) -> int:
    """floor(n ** (num/den)) computed exactly."""
    if den <= 0 or num < 0:
        raise ValueError("exponent must be a non-negative rational")
    return iroot_floor(n**num, den)
