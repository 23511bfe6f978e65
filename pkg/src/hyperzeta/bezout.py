"""Resultants and Bezout cofactors F*R_i + G*S_i = delta*x^i over Z.

Both quantities are computed modulo many word-size primes and lifted back
by the Chinese remainder theorem, so no rational arithmetic is involved.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from math import isqrt

import gmpy2

from .errors import NotCoprime
from .poly import Poly, pmod, pmul, pdivmod, pxgcd, poly_norm
from .rtree import sieve_primes

log = logging.getLogger(__name__)

_DET_PRIME_START = 1 << 61


@dataclass(frozen=True)
class BezoutData:
    delta: int
    R: tuple[Poly, ...]
    S: tuple[Poly, ...]


def sylvester_matrix(F: Poly, G: Poly) -> list[list[int]]:
    """Matrix of (R, S) -> F*R + G*S with deg R < deg G, deg S < deg F.

    Columns are deg G shifted copies of F followed by deg F shifted copies
    of G; rows are indexed by the power of x.
    """
    m, n = F.degree, G.degree
    size = m + n
    T = [[0] * size for _ in range(size)]
    for k in range(n):
        for d, c in enumerate(F.coeffs):
            T[k + d][k] = c
    for k in range(m):
        for d, c in enumerate(G.coeffs):
            T[k + d][n + k] = c
    return T


def hadamard_bound(T: list[list[int]]) -> int:
    """Integer upper bound on |det| of T and of all its minors."""
    sq = 1
    for j in range(len(T)):
        sq *= max(1, sum(row[j] * row[j] for row in T))
    return isqrt(sq) + 1


def _det_mod(T: list[list[int]], p: int) -> int:
    A = [[x % p for x in row] for row in T]
    n = len(A)
    det = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            return 0
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            det = -det
        inv = pow(A[col][col], -1, p)
        det = det * A[col][col] % p
        for r in range(col + 1, n):
            f = A[r][col] * inv % p
            if f:
                row_c = A[col]
                A[r] = [(a - f * b) % p for a, b in zip(A[r], row_c)]
    return det % p


def _balanced(x: int, m: int) -> int:
    x %= m
    return x - m if 2 * x > m else x


def sylvester_resultant(F: Poly, G: Poly) -> int:
    """Determinant of the Sylvester matrix of (F, G), by multimodular CRT."""
    if not F or not G:
        raise ValueError("resultant of the zero polynomial")
    T = sylvester_matrix(F, G)
    if not T:
        return 1
    bound = 2 * hadamard_bound(T)
    modulus, value = 1, 0
    p = _DET_PRIME_START
    while modulus <= bound:
        p = int(gmpy2.next_prime(p))
        d = _det_mod(T, p)
        # CRT step: value = value mod modulus, d mod p
        t = (d - value) * pow(modulus, -1, p) % p
        value += modulus * t
        modulus *= p
    return _balanced(value, modulus)


def _choose_beta(F: Poly, G: Poly, delta: int, coeff_bound: int) -> int:
    extra = (abs(delta) * poly_norm(F) * poly_norm(G)).bit_length()
    target = coeff_bound.bit_length() + extra + 2
    beta = 2
    while beta <= target:
        beta *= 2
    return beta


def _good_primes(beta: int, bad: int) -> list[int]:
    return [p for p in sieve_primes(beta) if bad % p]


def _local_cofactors(F: Poly, G: Poly, delta: int, p: int):
    m, n = F.degree, G.degree
    f, g = pmod(F.coeffs, p), pmod(G.coeffs, p)
    d, u, v = pxgcd(f, g, p)
    assert d == [1], "good prime must keep F, G coprime"
    dp = delta % p
    R = [c * dp % p for c in u]
    S = [c * dp % p for c in v]
    Rs, Ss = [R], [S]
    for _ in range(1, m + n):
        R = pdivmod(pmul([0, 1], R, p), g, p)[1]
        S = pdivmod(pmul([0, 1], S, p), f, p)[1]
        Rs.append(R)
        Ss.append(S)
    pad = lambda c, k: list(c) + [0] * (k - len(c))
    return [pad(r, n) for r in Rs], [pad(s, m) for s in Ss]


def bezout_cofactors(F: Poly, G: Poly, beta: int | None = None) -> BezoutData:
    """Integer cofactors R_i, S_i with F*R_i + G*S_i = delta*x^i.

    Here ``0 <= i < deg F + deg G``, ``deg R_i < deg G``, ``deg S_i < deg F``
    and delta is the Sylvester resultant. The cofactors are solved over
    F_p for every good prime p below a bound ``beta`` (the i = 0 case by
    extended Euclid, then R_i = x*R_{i-1} mod G and S_i = x*S_{i-1} mod F)
    and reconstructed by CRT with balanced residues.

    ``beta`` may be given explicitly; it is raised as needed so the product
    of good primes covers twice the Hadamard bound on the cofactors.
    """
    delta = sylvester_resultant(F, G)
    if delta == 0:
        raise NotCoprime(f"{F} and {G} share a common factor")
    m, n = F.degree, G.degree
    if m + n == 0:
        return BezoutData(delta, (), ())
    bound = hadamard_bound(sylvester_matrix(F, G))
    if beta is None:
        beta = _choose_beta(F, G, delta, bound)
    bad = abs(delta * F.lc * G.lc)
    while True:
        primes = _good_primes(beta, bad)
        J = 1
        for p in primes:
            J *= p
        if J > 2 * bound:
            break
        beta *= 2
    log.debug("bezout: beta=%d, %d good primes", beta, len(primes))

    size = m + n
    Rval = [[0] * n for _ in range(size)]
    Sval = [[0] * m for _ in range(size)]
    modulus = 1
    for p in primes:
        Rp, Sp = _local_cofactors(F, G, delta, p)
        inv = pow(modulus, -1, p)
        for i in range(size):
            for k in range(n):
                Rval[i][k] += modulus * ((Rp[i][k] - Rval[i][k]) * inv % p)
            for k in range(m):
                Sval[i][k] += modulus * ((Sp[i][k] - Sval[i][k]) * inv % p)
        modulus *= p
    R = tuple(Poly(_balanced(c, modulus) for c in row) for row in Rval)
    S = tuple(Poly(_balanced(c, modulus) for c in row) for row in Sval)
    return BezoutData(delta, R, S)
