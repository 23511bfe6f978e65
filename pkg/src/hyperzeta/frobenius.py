"""Frobenius matrices mod p^mu for all main-range primes p < N at once.

For every admissible pair (a, b) one matrix remainder tree and one scalar
remainder tree give, for all primes together, the reduction U_p^{a,b} of
x^(ap-1) y^(-bp+1) dx/y to p-adic precision. The Frobenius matrix at p is
then a fixed linear combination of those reductions.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import gmpy2

from .curve import Curve, poly_pow_coeffs
from .errors import IntegralityFailure, NonInvertibleDenominator, ValuationOverflow
from .reduction import AdmissiblePair, admissible_pairs, final_reduction_matrix, zero_matrix_sequence
from .rtree import accumulating_remainder_tree, sieve_primes, to_matrix

log = logging.getLogger(__name__)


def precision_mu(g: int) -> int:
    """Smallest mu with 3^(2 mu) >= 3^g 2^(2(2g+1)), i.e. ceil(g/2 + (2g+1) log_3 2)."""
    if g < 1:
        raise ValueError("g must be positive")
    target = 3**g * 4 ** (2 * g + 1)
    mu = 0
    while 9**mu < target:
        mu += 1
    return mu


def rho_bound(pair: AdmissiblePair) -> int:
    a, b = pair
    return (b - 1) // 2 + max(0, 2 * a - b)


def small_prime_cutoff(g: int, mu: int) -> int:
    """Primes at or below this go to the fallback path."""
    return (2 * g + 1) * (4 * mu - 1)


def alpha_coeffs(mu: int, modulus: int) -> list[int]:
    """alpha_j = sum_{k=j}^{mu-1} (-1)^(j+k) binom(-1/2, k) binom(k, j) mod modulus."""
    if modulus % 2 == 0:
        raise NonInvertibleDenominator("2 is not invertible modulo an even modulus")
    # binom(-1/2, k) = prod_{i<k} (-1/2 - i)/(i + 1) = prod (-(2i+1)) / (2(i+1))
    binoms = [1]
    for i in range(mu - 1):
        try:
            step = -(2 * i + 1) * pow(2 * (i + 1), -1, modulus)
        except ValueError as exc:
            raise NonInvertibleDenominator(f"{2 * (i + 1)} not invertible mod {modulus}") from exc
        binoms.append(binoms[-1] * step % modulus)
    return [
        sum((-1) ** (j + k) * binoms[k] * comb(k, j) for k in range(j, mu)) % modulus
        for j in range(mu)
    ]


def alpha_exact(mu: int) -> list[Fraction]:
    binoms = [Fraction(1)]
    for i in range(mu - 1):
        binoms.append(binoms[-1] * Fraction(-(2 * i + 1), 2 * (i + 1)))
    return [sum((-1) ** (j + k) * binoms[k] * comb(k, j) for k in range(j, mu)) for j in range(mu)]


@dataclass(frozen=True)
class UEntry:
    """U_p^{a,b} = p^(-e) * coords, coords known mod p^(mu + rho)."""

    pair: AdmissiblePair
    p: int
    coords: tuple[int, ...]
    e: int


@dataclass(frozen=True)
class FrobMatrix:
    p: int
    mu: int
    entries: tuple[tuple[int, ...], ...]

    @property
    def modulus(self) -> int:
        return self.p**self.mu

    def trace(self) -> int:
        return sum(self.entries[i][i] for i in range(len(self.entries))) % self.modulus


@dataclass
class FrobContext:
    curve: Curve
    mu: int
    pairs: list[AdmissiblePair]
    rho: dict[AdmissiblePair, int]
    lam: dict[AdmissiblePair, int]
    cutoff: int
    C: list[list[int]]
    rho_max: int = field(init=False)

    def __post_init__(self):
        self.rho_max = max(self.rho.values())

    @classmethod
    def for_curve(cls, curve: Curve, mu: int | None = None) -> FrobContext:
        mu = precision_mu(curve.g) if mu is None else mu
        pairs = admissible_pairs(curve.g, mu, curve.c0)
        rho = {pr: rho_bound(pr) for pr in pairs}
        return cls(
            curve=curve,
            mu=mu,
            pairs=pairs,
            rho=rho,
            lam={pr: mu + r for pr, r in rho.items()},
            cutoff=small_prime_cutoff(curve.g, mu),
            C=poly_pow_coeffs(curve, mu),
        )

    def is_main(self, p: int) -> bool:
        c = self.curve
        return p > self.cutoff and p % 2 and c.delta % p != 0 and (c.c0 == 0 or c.c0 % p != 0)

    def main_primes(self, N: int) -> list[int]:
        return [p for p in sieve_primes(N) if self.is_main(p)]


def pair_sequences(curve: Curve, pair: AdmissiblePair, B: int):
    """(M_0..M_{B-1}, D_0..D_{B-1}) for one pair; index 0 is the final block."""
    M0, D0 = final_reduction_matrix(curve, pair)
    Ms, Ds = zero_matrix_sequence(curve, pair, B)
    return [M0] + Ms, [D0] + Ds


def _valuation(x: int, p: int) -> int:
    return 0 if x == 0 else int(gmpy2.remove(gmpy2.mpz(x), p)[1])


def _pair_job(curve: Curve, pair: AdmissiblePair, B: int, mu: int, rho: int, primes: list[int]) -> dict[int, UEntry]:
    lam = mu + rho
    Ms, Ds = pair_sequences(curve, pair, B)
    Mleaf = accumulating_remainder_tree(Ms, lam, primes)
    # the scalar product carries rho extra digits so its unit part stays
    # known to p^lam after the p-power is divided out
    Dleaf = accumulating_remainder_tree([to_matrix([[d]]) for d in Ds], lam + rho, primes)
    out = {}
    for p in primes:
        d = int(Dleaf[p][0, 0])
        if d == 0:
            raise ValuationOverflow(f"pair {tuple(pair)}, p={p}: denominator vanishes mod p^{lam + rho}")
        e = _valuation(d, p)
        if e > rho:
            raise ValuationOverflow(f"pair {tuple(pair)}, p={p}: valuation {e} > rho = {rho}")
        m = p**lam
        inv = pow(d // p**e, -1, m)
        col = Mleaf[p][:, 0]
        coords = tuple(int(x) * inv % m for x in col)
        assert coords[0] == 0, "reduction must land in W_{-1,0}"
        out[p] = UEntry(pair, p, coords, e)
    return out


def compute_u_table(
    curve: Curve,
    pairs: list[AdmissiblePair],
    N: int,
    ctx: FrobContext | None = None,
    threads: int = 1,
) -> dict[tuple[AdmissiblePair, int], UEntry]:
    """U_p^{a,b} for every pair and every main-range prime p < N."""
    if N < 3:
        raise ValueError("N must be at least 3")
    ctx = ctx or FrobContext.for_curve(curve)
    primes = ctx.main_primes(N)
    if not primes:
        return {}
    B = (N + N % 2) // 2
    jobs = [(curve, pr, B, ctx.mu, rho_bound(pr), primes) for pr in pairs]
    table = {}
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_pair_job, *zip(*jobs)))
    else:
        results = [_pair_job(*job) for job in jobs]
    for pr, res in zip(pairs, results):
        for p, entry in res.items():
            table[(pr, p)] = entry
    log.debug("u-table: %d pairs x %d primes", len(pairs), len(primes))
    return table


def frobenius_terms(ctx: FrobContext, i: int):
    """(j, C_{j,r}, pair) for the nonzero terms of column i."""
    for j in range(ctx.mu):
        for r, c in enumerate(ctx.C[j]):
            if c:
                yield j, c, AdmissiblePair(i + r + 1, 2 * j + 1)


def assemble_frobenius(curve: Curve, p: int, u_table, ctx: FrobContext) -> FrobMatrix:
    """Columns T_i = sum_{j,r} p alpha_j C_{j,r} U_p^{(i+r+1, 2j+1)} mod p^mu.

    Each term is scaled by p^rho* so every summand is integral, summed mod
    p^(mu+rho*), then divided back by p^rho* exactly.
    """
    g, mu = curve.g, ctx.mu
    rs = ctx.rho_max
    big = p ** (mu + rs)
    shift = p**rs
    alpha = alpha_coeffs(mu, big)
    cols = []
    for i in range(2 * g):
        acc = [0] * (2 * g + 1)
        for j, c, pair in frobenius_terms(ctx, i):
            u = u_table[(pair, p)]
            w = p ** (1 + rs - u.e) * alpha[j] * c
            for k in range(1, 2 * g + 1):
                acc[k] = (acc[k] + w * u.coords[k]) % big
        if any(x % shift for x in acc):
            raise IntegralityFailure(f"p={p}: column {i} is not p-integral")
        m = p**mu
        cols.append([(x // shift) % m for x in acc[1:]])
    entries = tuple(tuple(cols[i][k] for i in range(2 * g)) for k in range(2 * g))
    return FrobMatrix(p, mu, entries)


def frobenius_matrices(curve: Curve, N: int, threads: int = 1, ctx: FrobContext | None = None):
    """Frobenius matrices for all main-range primes p < N, plus the U-table."""
    ctx = ctx or FrobContext.for_curve(curve)
    table = compute_u_table(curve, ctx.pairs, N, ctx, threads)
    mats = {p: assemble_frobenius(curve, p, table, ctx) for p in ctx.main_primes(N)}
    return mats, table
