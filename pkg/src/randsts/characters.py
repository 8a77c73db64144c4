"""Irreducible characters of S_n by the Murnaghan–Nakayama rule.

Border strips are found on the beta-set (abacus) of a partition: removing an
r-strip moves one bead from b to b - r onto an empty position, and the strip
height is the number of beads strictly between the two positions.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Sequence

from .partitions import all_partitions, class_size, hook_product, partition

__all__ = [
    "BorderStripRemoval",
    "CharColumn",
    "dimension",
    "two_row_dimension",
    "border_strip_removals",
    "mn_character",
    "character_column",
    "character_table",
    "clear_cache",
]


@dataclass(frozen=True)
class BorderStripRemoval:
    parent: tuple
    strip_size: int
    child: tuple
    height: int


@dataclass(frozen=True)
class CharColumn:
    mu: tuple
    values: dict  # lambda -> int, in reverse-lex order of lambda

    def __getitem__(self, lam):
        return self.values[tuple(lam)]

    def norm(self) -> int:
        return sum(v * v for v in self.values.values())


def dimension(lam: Sequence[int]) -> int:
    """n!/H_lambda."""
    lam = partition(lam)
    return factorial(sum(lam)) // hook_product(lam)


def two_row_dimension(n: int, k: int) -> int:
    """Closed form C(n,k)(n-2k+1)/(n-k+1) for the shape (n-k, k)."""
    num = comb(n, k) * (n - 2 * k + 1)
    q, r = divmod(num, n - k + 1)
    assert r == 0
    return q


@lru_cache(maxsize=200_000)
def _removals(lam: tuple, r: int) -> tuple:
    """((child, height), ...) for every r-strip of lam."""
    length = len(lam)
    beta = [lam[i] + length - 1 - i for i in range(length)]
    beads = set(beta)
    out = []
    for b in beta:
        t = b - r
        if t < 0 or t in beads:
            continue
        height = sum(1 for c in beta if t < c < b)
        new = sorted((t if c == b else c for c in beta), reverse=True)
        child = tuple(v - (length - 1 - i) for i, v in enumerate(new))
        out.append((partition(child), height))
    return tuple(out)


def border_strip_removals(lam: Sequence[int], size: int) -> list:
    lam = partition(lam)
    if size < 1:
        raise ValueError("strip size must be positive")
    return [BorderStripRemoval(lam, size, child, h) for child, h in _removals(lam, size)]


@lru_cache(maxsize=4096)
def _column(mu: tuple) -> dict:
    # characters of every lambda |- |mu| on class mu, built from the column of
    # mu with its largest part stripped
    if not mu:
        return {(): 1}
    rest = _column(mu[1:])
    r = mu[0]
    values = {}
    for lam in all_partitions(sum(mu)):
        v = 0
        for child, h in _removals(lam, r):
            c = rest.get(child, 0)
            if c:
                v += -c if h & 1 else c
        values[lam] = v
    return values


def clear_cache():
    _column.cache_clear()
    _removals.cache_clear()


def character_column(mu: Sequence[int]) -> CharColumn:
    mu = tuple(sorted(partition(mu), reverse=True))
    return CharColumn(mu, dict(_column(mu)))


def mn_character(lam: Sequence[int], mu: Sequence[int]) -> int:
    """chi^lambda evaluated on the class of cycle type mu."""
    lam = partition(lam)
    mu = partition(sorted(mu, reverse=True))
    if sum(lam) != sum(mu):
        raise ValueError(f"size mismatch: |lambda|={sum(lam)}, |mu|={sum(mu)}")
    return _column(mu)[lam]


def character_table(n: int) -> dict:
    """{mu: {lambda: chi^lambda(mu)}} over all classes of S_n."""
    return {mu: _column(mu) for mu in all_partitions(n)}


def column_norm_target(mu: Sequence[int]) -> int:
    """Second orthogonality at g = h: sum_lambda chi(mu)^2 = n!/|K_mu|."""
    return factorial(sum(mu)) // class_size(mu)
