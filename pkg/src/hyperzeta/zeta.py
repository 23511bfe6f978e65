"""From a Frobenius matrix mod p^mu to the exact L-polynomial."""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Sequence

from .errors import FunctionalEquationMismatch, NonInvertibleSmallInteger, WeilBoundViolation

STATUSES = ("computed", "fallback", "bad")


@dataclass(frozen=True)
class LPolyRecord:
    """One output line: P(T) = sum a[i] T^i for the reduction mod p.

    ``a`` is None for primes of bad reduction.
    """

    p: int
    status: str
    a: tuple[int, ...] | None = None

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if (self.a is None) != (self.status == "bad"):
            raise ValueError("coefficients present iff status is not 'bad'")
        if self.a is not None:
            object.__setattr__(self, "a", tuple(int(x) for x in self.a))

    @property
    def genus(self) -> int:
        return (len(self.a) - 1) // 2

    def point_count(self) -> int:
        """#X(F_p) = p + 1 + a_1."""
        return self.p + 1 + self.a[1]

    def check(self) -> None:
        """Assert a_0 = 1, the functional equation and the Weil bounds."""
        a, p = self.a, self.p
        g = self.genus
        if a[0] != 1:
            raise FunctionalEquationMismatch(f"p={p}: a_0 = {a[0]}")
        for i in range(g + 1):
            if a[2 * g - i] != p ** (g - i) * a[i]:
                raise FunctionalEquationMismatch(f"p={p}: a_{2 * g - i} != p^{g - i} a_{i}")
        for i in range(2 * g + 1):
            if not weil_ok(a[i], i, g, p):
                raise WeilBoundViolation(f"p={p}: |a_{i}| = {abs(a[i])} too large")


def weil_ok(ai: int, i: int, g: int, p: int) -> bool:
    # |a_i| <= C(2g, i) p^(i/2), squared to stay in integers
    return ai * ai <= comb(2 * g, i) ** 2 * p**i


def _matmul_mod(A, B, m):
    n = len(A)
    return [[sum(A[i][k] * B[k][j] for k in range(n)) % m for j in range(n)] for i in range(n)]


def charpoly_mod(F: Sequence[Sequence[int]], g: int, p: int, mu: int) -> list[int]:
    """Elementary symmetric functions e_1..e_2g of the eigenvalues of F mod p^mu.

    Power sums come from traces of F^k; Newton's identities then need the
    inverses of 2..2g, so p must exceed 2g.
    """
    m = p**mu
    n = 2 * g
    F = [[int(x) % m for x in row] for row in F]
    if len(F) != n:
        raise ValueError(f"expected a {n}x{n} matrix")
    power_sums = []
    Fk = F
    for k in range(1, n + 1):
        if k > 1:
            Fk = _matmul_mod(Fk, F, m)
        power_sums.append(sum(Fk[i][i] for i in range(n)) % m)
    e = [1]
    for k in range(1, n + 1):
        if k % p == 0:
            raise NonInvertibleSmallInteger(f"{k} is not invertible mod {p}^{mu}")
        acc = 0
        for i in range(1, k + 1):
            term = e[k - i] * power_sums[i - 1]
            acc += term if i % 2 else -term
        e.append(acc * pow(k, -1, m) % m)
    return e[1:]


def balanced_lift(x: int, m: int) -> int:
    x %= m
    assert 2 * x != m, "tie impossible for odd modulus"
    return x - m if 2 * x > m else x


def lift_weil_lpoly(e: Sequence[int], p: int, g: int, mu: int, status: str = "computed") -> LPolyRecord:
    """Recover P(T) exactly from e_1..e_2g mod p^mu.

    a_i = (-1)^i e_i is lifted to (-p^mu/2, p^mu/2] for i <= g, the rest
    follows from a_{2g-i} = p^(g-i) a_i, and the upper residues are
    checked against that.
    """
    m = p**mu
    a = [0] * (2 * g + 1)
    a[0] = 1
    for i in range(1, g + 1):
        a[i] = (-1) ** i * balanced_lift(e[i - 1], m)
        if not weil_ok(a[i], i, g, p):
            raise WeilBoundViolation(f"p={p}: |a_{i}| = {abs(a[i])} exceeds the Weil bound")
    for i in range(g):
        a[2 * g - i] = p ** (g - i) * a[i]
    for k in range(g + 1, 2 * g + 1):
        if k - 1 < len(e) and (a[k] - (-1) ** k * e[k - 1]) % m:
            raise FunctionalEquationMismatch(f"p={p}: residue of a_{k} disagrees")
    rec = LPolyRecord(p, status, tuple(a))
    rec.check()
    return rec
