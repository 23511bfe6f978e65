"""Prime sieve, integer matrices and the accumulating remainder tree.

Matrices are 2-d numpy arrays of dtype object holding ``gmpy2.mpz``
entries, so products use GMP arithmetic while numpy drives the loops.
"""

from __future__ import annotations

from math import isqrt
from typing import Iterable, Sequence

import gmpy2
import numpy as np

from .errors import DimensionMismatch

IntMatrix = np.ndarray


def sieve_primes(limit: int) -> list[int]:
    """Ascending list of the primes below ``limit``."""
    if limit <= 2:
        return []
    is_p = np.ones(limit, dtype=bool)
    is_p[:2] = False
    for q in range(2, isqrt(limit - 1) + 1):
        if is_p[q]:
            is_p[q * q :: q] = False
    return [int(x) for x in np.flatnonzero(is_p)]


def to_matrix(rows) -> IntMatrix:
    rows = [list(r) for r in rows]
    out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
    for i, r in enumerate(rows):
        for j, x in enumerate(r):
            out[i, j] = gmpy2.mpz(x)
    return out


def identity(n: int) -> IntMatrix:
    return to_matrix([[int(i == j) for j in range(n)] for i in range(n)])


def zeros(n: int) -> IntMatrix:
    return to_matrix([[0] * n for _ in range(n)])


def mat_norm(M: IntMatrix) -> int:
    """Largest L1 norm of a column."""
    if M.size == 0:
        return 0
    return int(max(sum(abs(x) for x in M[:, j]) for j in range(M.shape[1])))


def mat_mod(M: IntMatrix, m: int) -> IntMatrix:
    return M % gmpy2.mpz(m)


def as_int_rows(M: IntMatrix) -> list[list[int]]:
    return [[int(x) for x in row] for row in M]


def _node_range(i: int, j: int, B: int) -> tuple[int, int]:
    # U_{i,j} = {k : j*B/2^i <= k < (j+1)*B/2^i}
    d = 1 << i
    return -(-j * B // d), -(-(j + 1) * B // d)


def tree_shape(B: int) -> list[list[tuple[int, int]]]:
    """Half-open index intervals U_{i,j} for every level i of the tree."""
    depth = max(0, (B - 1).bit_length())
    return [[_node_range(i, j, B) for j in range(1 << i)] for i in range(depth + 1)]


def dump_tree_shape(B: int) -> str:
    lines = []
    for i, level in enumerate(tree_shape(B)):
        cells = " ".join(f"[{lo},{hi})" for lo, hi in level)
        lines.append(f"level {i}: {cells}")
    return "\n".join(lines)


def _check_dims(M: Sequence[IntMatrix]) -> int:
    shapes = {np.shape(m) for m in M}
    if len(shapes) != 1:
        raise DimensionMismatch(f"matrices of several shapes: {sorted(shapes)}")
    (shape,) = shapes
    if len(shape) != 2 or shape[0] != shape[1]:
        raise DimensionMismatch(f"matrices must be square, got {shape}")
    return shape[0]


def accumulating_remainder_tree(
    M: Sequence[IntMatrix],
    lam: int,
    primes: Iterable[int] | None = None,
) -> dict[int, IntMatrix]:
    """M_0 M_1 ... M_{(p-1)/2} mod p^lam for the odd primes 3 <= p < 2B.

    ``B = len(M)``. If ``primes`` is given only those (odd, < 2B) primes are
    produced. Values are canonical residues in [0, p^lam).
    """
    B = len(M)
    if B < 1:
        raise ValueError("need at least one matrix")
    if lam < 1:
        raise ValueError("lam must be positive")
    n = _check_dims(M)
    M = [m if m.dtype == object else to_matrix(m.tolist()) for m in M]
    wanted = set(p for p in sieve_primes(2 * B) if p > 2)
    if primes is not None:
        wanted &= set(primes)
    if not wanted:
        return {}

    depth = max(0, (B - 1).bit_length())
    nleaf = 1 << depth
    ident = identity(n)

    # bottom-up: moduli P and partial products A, leaf level first
    P_levels: list[list] = [None] * (depth + 1)
    A_levels: list[list] = [None] * (depth + 1)
    P_leaf, A_leaf = [], []
    for j in range(nleaf):
        lo, hi = _node_range(depth, j, B)
        if lo == hi:
            P_leaf.append(1)
            A_leaf.append(ident)
        else:
            k = lo
            p = 2 * k + 1
            P_leaf.append(gmpy2.mpz(p) ** lam if p in wanted else 1)
            A_leaf.append(M[k + 1] if k + 1 < B else ident)
    P_levels[depth], A_levels[depth] = P_leaf, A_leaf
    for i in range(depth - 1, -1, -1):
        below_P, below_A = P_levels[i + 1], A_levels[i + 1]
        P_levels[i] = [below_P[2 * j] * below_P[2 * j + 1] for j in range(1 << i)]
        # A_{0,0} and right children are never consumed, but cost one
        # product per node at most; the root is skipped
        if i > 0:
            A_levels[i] = [below_A[2 * j].dot(below_A[2 * j + 1]) for j in range(1 << i)]

    # top-down accumulation
    C = [M[0] % P_levels[0][0]]
    for i in range(depth):
        Pn, An = P_levels[i + 1], A_levels[i + 1]
        nxt = []
        for j, c in enumerate(C):
            left, right = Pn[2 * j], Pn[2 * j + 1]
            nxt.append(c % left if left != 1 else None)
            if right != 1:
                nxt.append(c.dot(An[2 * j]) % right)
            else:
                nxt.append(None)
        C = nxt
        A_levels[i + 1] = None
        P_levels[i] = None

    out = {}
    for j, c in enumerate(C):
        lo, hi = _node_range(depth, j, B)
        if lo < hi and c is not None:
            p = 2 * lo + 1
            assert p < 2 * B
            out[p] = c
    return dict(sorted(out.items()))
