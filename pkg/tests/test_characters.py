from math import comb, factorial

import pytest

from randsts.characters import (
    border_strip_removals,
    character_column,
    character_table,
    clear_cache,
    dimension,
    mn_character,
    two_row_dimension,
)
from randsts.partitions import all_partitions, class_size, conjugate, is_even_class

from oracles import brute_strips, bst_character, hook_dimension


def test_dimension_examples():
    assert dimension((5, 3, 3, 2, 1)) == 64064
    assert dimension((7,)) == 1
    assert dimension((3, 2)) == 5 == two_row_dimension(5, 2)


def test_strip_removal_examples():
    (r,) = border_strip_removals((2, 1), 3)
    assert (r.child, r.height) == ((), 1)
    (r,) = border_strip_removals((2, 2), 3)
    assert (r.child, r.height) == ((1,), 1)
    assert border_strip_removals((1,), 2) == []


@pytest.mark.parametrize("n", range(1, 7))
def test_strip_removals_match_brute_force(n):
    for lam in all_partitions(n):
        for size in range(1, n + 1):
            got = sorted((r.child, r.height) for r in border_strip_removals(lam, size))
            assert got == brute_strips(lam, size), (lam, size)


def test_character_examples():
    assert mn_character((2, 1), (3,)) == -1
    assert mn_character((5,), (3, 2)) == 1
    assert mn_character((2, 1), (1, 1, 1)) == 2
    col = character_column((3,))
    assert dict(col.values) == {(3,): 1, (2, 1): -1, (1, 1, 1): 1}


def test_character_size_mismatch():
    with pytest.raises(ValueError):
        mn_character((2, 1), (2,))


@pytest.mark.parametrize("n", range(1, 7))
def test_characters_match_strip_oracle(n):
    for lam in all_partitions(n):
        for mu in all_partitions(n):
            assert mn_character(lam, mu) == bst_character(lam, mu)


def test_identity_column_is_dimension():
    for n in range(1, 11):
        col = character_column((1,) * n)
        for lam in all_partitions(n):
            assert col[lam] == dimension(lam) == hook_dimension(lam)
        assert col.norm() == factorial(n)


def test_first_orthogonality_and_norms():
    for n in range(1, 10):
        table = character_table(n)
        parts = list(all_partitions(n))
        for i, a in enumerate(parts):
            for b in parts[i:]:
                s = sum(class_size(mu) * table[mu][a] * table[mu][b] for mu in parts)
                assert s == (factorial(n) if a == b else 0)
        for mu in parts:
            assert character_column(mu).norm() * class_size(mu) == factorial(n)


def test_two_row_closed_form():
    for n in range(2, 31):
        for k in range(1, n // 2 + 1):
            d = two_row_dimension(n, k)
            assert d == dimension((n - k, k))
            assert d * (n - k + 1) == comb(n, k) * (n - 2 * k + 1)
            assert d <= comb(n, k)


def test_n_cycle_values():
    for n in range(1, 16):
        col = character_column((n,))
        assert set(col.values.values()) <= {-1, 0, 1}


def test_transpose_sign():
    for n in range(1, 9):
        for mu in all_partitions(n):
            sign = 1 if is_even_class(mu) else -1
            col = character_column(mu)
            for lam in all_partitions(n):
                assert col[conjugate(lam)] == sign * col[lam]


def test_cache_clear_is_harmless():
    v = mn_character((4, 3, 1), (3, 3, 2))
    clear_cache()
    assert mn_character((4, 3, 1), (3, 3, 2)) == v


def test_big_dimensions_exact():
    # exceeds 64 bits
    lam = tuple(range(10, 0, -1))
    assert dimension(lam) == hook_dimension(lam)
    assert dimension(lam) > 2**64
    assert dimension((10, 9, 8, 1)) == hook_dimension((10, 9, 8, 1))
