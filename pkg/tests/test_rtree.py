import random
from math import factorial

import numpy as np
import pytest

from hyperzeta.errors import DimensionMismatch
from hyperzeta.oracle import direct_mod_product
from hyperzeta.rtree import (
    _node_range,
    accumulating_remainder_tree,
    as_int_rows,
    identity,
    mat_norm,
    sieve_primes,
    to_matrix,
    tree_shape,
)


def scalars(values):
    return [to_matrix([[v]]) for v in values]


def test_sieve():
    assert sieve_primes(10) == [2, 3, 5, 7]
    assert sieve_primes(2) == []
    ps = sieve_primes(100)
    assert len(ps) == 25 and ps[-1] == 97


def test_small_scalar_example():
    out = accumulating_remainder_tree(scalars([1, 1, 2, 3]), 1)
    assert {p: int(m[0, 0]) for p, m in out.items()} == {3: 1, 5: 2, 7: 6}


@pytest.mark.parametrize("lam", [1, 3])
def test_identity_sequence(lam):
    out = accumulating_remainder_tree([identity(3)] * 40, lam)
    assert list(out) == [p for p in sieve_primes(80) if p > 2]
    for m in out.values():
        assert as_int_rows(m) == as_int_rows(identity(3))


def test_factorial_leaves():
    B = 256
    out = accumulating_remainder_tree(scalars([1] + list(range(1, B))), 2)
    for p, m in out.items():
        assert int(m[0, 0]) == factorial((p - 1) // 2) % p**2


@pytest.mark.parametrize("B", [1, 2, 3, 5, 8, 13, 64, 100])
def test_partition(B):
    for level in tree_shape(B):
        covered = []
        for lo, hi in level:
            covered.extend(range(lo, hi))
        assert covered == list(range(B))


def test_node_range_halves():
    B = 37
    for i in range(5):
        for j in range(1 << i):
            lo, hi = _node_range(i, j, B)
            l1, m1 = _node_range(i + 1, 2 * j, B)
            m2, h2 = _node_range(i + 1, 2 * j + 1, B)
            assert (lo, hi) == (l1, h2) and m1 == m2


def test_matches_direct_products():
    rng = random.Random(99)
    for _ in range(5):
        B = rng.randint(2, 60)
        lam = rng.randint(1, 4)
        M = [to_matrix([[rng.randint(-10**6, 10**6) for _ in range(3)] for _ in range(3)]) for _ in range(B)]
        out = accumulating_remainder_tree(M, lam)
        assert set(out) == {p for p in sieve_primes(2 * B) if p > 2}
        for p, leaf in out.items():
            assert (leaf == direct_mod_product(M, p, (p - 1) // 2, lam)).all()


def test_prime_subset_and_determinism():
    rng = random.Random(5)
    M = [to_matrix([[rng.randint(0, 99) for _ in range(2)] for _ in range(2)]) for _ in range(50)]
    full = accumulating_remainder_tree(M, 2)
    part = accumulating_remainder_tree(M, 2, primes=[7, 53, 97, 101])
    assert list(part) == [7, 53, 97]
    for p in part:
        assert (part[p] == full[p]).all()
    again = accumulating_remainder_tree(M, 2)
    assert all((again[p] == full[p]).all() for p in full)


def test_canonical_residues():
    M = scalars([-5, -7, -11, -13, -17])
    for p, m in accumulating_remainder_tree(M, 2).items():
        assert 0 <= int(m[0, 0]) < p**2


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        accumulating_remainder_tree([identity(2), identity(3)], 1)
    with pytest.raises(DimensionMismatch):
        accumulating_remainder_tree([to_matrix([[1, 2, 3]])], 1)


def test_direct_product_examples():
    assert int(direct_mod_product(scalars([1, 1, 2]), 5, 2, 1)[0, 0]) == 2
    rng = random.Random(1)
    M = [to_matrix([[rng.randint(-50, 50) for _ in range(3)] for _ in range(3)]) for _ in range(9)]
    full = M[0]
    for m in M[1:]:
        full = full.dot(m)
    assert (direct_mod_product(M, 11, 8, 3) == full % 11**3).all()


def test_mat_norm():
    assert mat_norm(to_matrix([[1, -2], [3, 4]])) == 6
    assert mat_norm(np.zeros((2, 2), dtype=object)) == 0
