import random
from fractions import Fraction

import numpy as np
import pytest

from hyperzeta.errors import IllegalStep, ZeroConstantTerm
from hyperzeta.reduction import (
    AdmissiblePair,
    DifferentialVector,
    LinForm,
    LinMatrix,
    admissible_pairs,
    build_vertical,
    eval_linmat,
    exact_differential,
    final_path,
    final_reduction_matrix,
    rational_reduce,
    reduce_to_zero_matrix,
    reduction_maps,
    zero_matrix_sequence,
    zero_path,
)
from hyperzeta.rtree import as_int_rows, mat_norm

from support import CURVES, check_exactness, check_path_independence, exactness_cases, path_independence_cases

E1, E0 = CURVES[0], CURVES[1]


def _maps(rm):
    out = [rm.M_H, rm.M_D]
    return out + ([rm.M_V] if rm.M_V is not None else [])


@pytest.mark.parametrize("curve", CURVES, ids=str)
def test_entries_are_affine(curve):
    # degree <= 1 in (s, t): second differences vanish
    for M in _maps(reduction_maps(curve)):
        for s, t in [(0, 0), (3, 2), (7, 5)]:
            base = eval_linmat(M, s, t)
            ds = eval_linmat(M, s + 1, t) - base
            dt = eval_linmat(M, s, t + 1) - base
            assert (eval_linmat(M, s + 2, t + 3) - base == 2 * ds + 3 * dt).all()


def test_horizontal_examples():
    rm = reduction_maps(E1)
    assert as_int_rows(eval_linmat(rm.M_H, 1, 1)) == [[0, 0, 2], [1, 0, 1], [0, 1, 0]]
    assert rm.D_H(0, 1) == 3
    assert rm.D_H(1, 0) == -5
    h = reduction_maps(E0).M_H
    for s, t in [(0, 0), (4, 1), (2, 9)]:
        assert [row[2] for row in as_int_rows(eval_linmat(h, s, t))] == [0, 2 * t - 1 - 2 * s, 0]


@pytest.mark.parametrize("curve", CURVES, ids=str)
def test_horizontal_denominator_odd(curve):
    rm = reduction_maps(curve)
    assert rm.D_H(0, 1) == 2 * curve.g + 1
    for s in range(6):
        for t in range(6):
            assert rm.D_H(s, t) % 2 == 1


def test_diagonal_denominator():
    rm = reduction_maps(E1)
    assert rm.D_D(5, 1) == 1
    assert rm.delta == 31


def test_vertical_needs_c0():
    rm = reduction_maps(E0)
    assert rm.M_V is None
    with pytest.raises(ZeroConstantTerm):
        build_vertical(E0, rm.bezout)


def test_linmatrix_eval():
    assert LinForm(5, -2, 3)(2, 7) == 22
    z = LinMatrix.from_entries([[(0, 0, 0)] * 2] * 2)
    assert as_int_rows(eval_linmat(z, 4, 9)) == [[0, 0], [0, 0]]


def test_admissible_pairs():
    p = admissible_pairs(1, 3, 1)
    assert len(p) == 15
    assert [x.a for x in p if x.b == 5] == list(range(1, 9))
    q = admissible_pairs(1, 3, 0)
    assert len(q) == 12
    assert [min(x.a for x in q if x.b == b) for b in (1, 3, 5)] == [1, 2, 3]
    assert admissible_pairs(1, 1, 1) == [(1, 1), (2, 1)]
    assert all(isinstance(x, AdmissiblePair) for x in p)
    assert p == sorted(p, key=lambda x: (x.b, x.a))


def test_zero_matrix_example():
    rm = reduction_maps(E1)
    M, D = reduce_to_zero_matrix(E1, AdmissiblePair(1, 1), 1)
    assert D == -155
    expect = eval_linmat(rm.M_H, 1, 0).dot(eval_linmat(rm.M_D, 2, 1))
    assert (M == expect).all()
    assert zero_path(AdmissiblePair(1, 1)) == "DH"
    assert zero_path(AdmissiblePair(1, 3)) == "DDV"


def test_final_matrix_example():
    rm = reduction_maps(E1)
    M0, D0 = final_reduction_matrix(E1, AdmissiblePair(1, 1))
    assert D0 == -3 and (M0 == eval_linmat(rm.M_H, 0, 0)).all()
    M0, D0 = final_reduction_matrix(E1, AdmissiblePair(2, 1))
    assert D0 == rm.D_H(0, 0) * rm.D_H(1, 0)
    assert final_path(AdmissiblePair(2, 1)) == "HH"


@pytest.mark.parametrize("curve", CURVES, ids=str)
def test_final_matrix_row_zero(curve):
    for pair in admissible_pairs(curve.g, 3, curve.c0):
        M0, D0 = final_reduction_matrix(curve, pair)
        assert D0 != 0
        assert not any(M0[0])


@pytest.mark.parametrize("curve", CURVES[:4], ids=str)
def test_sequence_matches_blockwise(curve):
    for pair in admissible_pairs(curve.g, 2, curve.c0)[::3]:
        Ms, Ds = zero_matrix_sequence(curve, pair, 7)
        for r in range(1, 7):
            M, D = reduce_to_zero_matrix(curve, pair, r)
            assert (Ms[r - 1] == M).all() and Ds[r - 1] == D != 0


def test_zero_block_agrees_with_rational_reduce():
    curve = CURVES[2]
    for pair in admissible_pairs(2, 2, curve.c0)[::4]:
        a, b = pair
        r = 2
        s, t = a * (2 * r + 1) - 1, (b * (2 * r + 1) - 1) // 2
        v = tuple(Fraction(k + 1) for k in range(curve.dim))
        M, D = reduce_to_zero_matrix(curve, pair, r)
        got = rational_reduce(DifferentialVector(s, t, v), zero_path(pair), curve)
        assert (got.s, got.t) == (a * (2 * r - 1) - 1, (b * (2 * r - 1) - 1) // 2)
        assert list(got.coords) == [Fraction(int(x), D) for x in M.dot(np.array([int(c) for c in v], dtype=object))]


def test_norm_submultiplicative():
    rng = random.Random(3)
    for _ in range(50):
        r = rng.randint(1, 40)
        pair = rng.choice(admissible_pairs(1, 3, 1))
        A, _ = reduce_to_zero_matrix(E1, pair, r)
        B, _ = reduce_to_zero_matrix(E1, rng.choice(admissible_pairs(1, 3, 1)), rng.randint(1, 40))
        assert mat_norm(A.dot(B)) <= mat_norm(A) * mat_norm(B)


# --- exact-rational properties ------------------------------------------------

def test_path_example():
    v = DifferentialVector(4, 2, (1, 0, 0))
    a = rational_reduce(v, "DDHHH", E1)
    b = rational_reduce(v, "HVDHHH", E1)
    c = rational_reduce(v, "VHHDHH", E1)
    assert (a.s, a.t) == (-1, 0)
    assert a == b == c
    assert a.coords[0] == 0


def test_zero_vector():
    z = DifferentialVector(3, 2, (0, 0, 0))
    assert all(c == 0 for c in rational_reduce(z, "DHVHH", E1).coords)


def test_illegal_steps():
    with pytest.raises(IllegalStep):
        rational_reduce(DifferentialVector(2, 2, (1, 0, 0)), "V", E0)
    with pytest.raises(IllegalStep):
        rational_reduce(DifferentialVector(0, 1, (0, 1, 0)), "HH", E1)
    with pytest.raises(IllegalStep):
        rational_reduce(DifferentialVector(2, 1, (1, 0, 0)), "X", E1)


def test_path_independence_sample():
    assert all(check_path_independence(case) for case in path_independence_cases(40, seed=5))


def test_exactness_sample():
    assert all(check_exactness(case) for case in exactness_cases(40, seed=6))


def test_exact_differential_is_nonzero():
    hi, lo = exact_differential(E1, 3, 2)
    assert hi.coords[-1] != 0 and (hi.s, lo.s) == (3, 2)
