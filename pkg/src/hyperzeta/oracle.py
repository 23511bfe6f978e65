"""Brute-force ground truth.

Point counts over F_{p^n} by direct evaluation of the quadratic character,
L-polynomials from those counts, plain left-to-right modular products and
exact-rational reductions. Also used as the small-prime fallback.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .curve import Curve
from .errors import BudgetExceeded, InvalidInput, NonIntegralNewton
from .poly import is_irreducible_mod, ppowmod
from .reduction import AdmissiblePair, DifferentialVector, full_path, rational_reduce
from .rtree import IntMatrix, identity, to_matrix
from .zeta import LPolyRecord

DEFAULT_BUDGET = 1 << 25
EXACT_U_MAX_P = 211
_CHUNK = 1 << 18


@lru_cache(maxsize=None)
def field_modulus(p: int, n: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree n over F_p, ascending coefficients.

    Candidates are ordered by their coefficient tuple read from the
    constant term upward.
    """
    if n == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=n):
        f = list(low) + [1]
        if low[0] and is_irreducible_mod(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """F_{p^n} = F_p[x]/(f); elements are length-n coefficient vectors.

    The arithmetic methods act on int64 arrays of shape (..., n) so that a
    whole batch of elements is handled at once.
    """

    def __init__(self, p: int, n: int):
        if n < 1:
            raise ValueError("n must be positive")
        self.p, self.n = p, n
        self.q = p**n
        self.modulus = field_modulus(p, n)
        # column k = coordinates of x^(p*k), the F_p-linear Frobenius map
        frob = np.zeros((n, n), dtype=np.int64)
        for k in range(n):
            img = ppowmod([0, 1], p * k, list(self.modulus), p) if n > 1 else [1]
            for i, c in enumerate(img):
                frob[i, k] = c
        self.frob = frob

    def elements(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        """Elements with index in [start, stop), index = sum c_i p^i."""
        stop = self.q if stop is None else stop
        idx = np.arange(start, stop, dtype=np.int64)
        out = np.empty((len(idx), self.n), dtype=np.int64)
        for i in range(self.n):
            out[:, i] = idx % self.p
            idx //= self.p
        return out

    def constant(self, c: int, shape) -> np.ndarray:
        out = np.zeros(tuple(shape) + (self.n,), dtype=np.int64)
        out[..., 0] = c % self.p
        return out

    def add(self, a, b):
        return (a + b) % self.p

    def mul(self, a, b):
        p, n, f = self.p, self.n, self.modulus
        if n == 1:
            return a * b % p
        shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
        prod = np.zeros(shape + (2 * n - 1,), dtype=np.int64)
        for i in range(n):
            for j in range(n):
                prod[..., i + j] = (prod[..., i + j] + a[..., i] * b[..., j]) % p
        for k in range(2 * n - 2, n - 1, -1):
            top = prod[..., k]
            for i in range(n):
                if f[i]:
                    prod[..., k - n + i] = (prod[..., k - n + i] - top * f[i]) % p
        return prod[..., :n]

    def pow(self, a, e: int):
        result = self.constant(1, a.shape[:-1])
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            e >>= 1
            if e:
                base = self.mul(base, base)
        return result

    def frobenius(self, a):
        return (a @ self.frob.T) % self.p

    def norm(self, a):
        """Norm to F_p, as an integer array in [0, p)."""
        acc, conj = a, a
        for _ in range(self.n - 1):
            conj = self.frobenius(conj)
            acc = self.mul(acc, conj)
        return acc[..., 0]

    def chi(self, a) -> np.ndarray:
        """Quadratic character in {-1, 0, 1}: chi_p of the norm, by square-and-multiply."""
        p = self.p
        v = self.norm(a)
        r = np.ones_like(v)
        base, e = v % p, (p - 1) // 2
        while e:
            if e & 1:
                r = r * base % p
            e >>= 1
            if e:
                base = base * base % p
        return np.where(r == p - 1, -1, r)


class FiniteFieldElem:
    """Scalar wrapper over :class:`FiniteField`, for spot checks."""

    __slots__ = ("field", "c")

    def __init__(self, field: FiniteField, coeffs: Sequence[int]):
        self.field = field
        c = np.zeros(field.n, dtype=np.int64)
        for i, x in enumerate(coeffs):
            c[i] = x % field.p
        self.c = c

    def _wrap(self, arr):
        return FiniteFieldElem(self.field, arr.tolist())

    def __add__(self, other):
        return self._wrap(self.field.add(self.c, other.c))

    def __mul__(self, other):
        return self._wrap(self.field.mul(self.c[None, :], other.c[None, :])[0])

    def __pow__(self, e: int):
        return self._wrap(self.field.pow(self.c[None, :], e)[0])

    def __eq__(self, other):
        return isinstance(other, FiniteFieldElem) and np.array_equal(self.c, other.c)

    def __hash__(self):
        return hash(tuple(self.c.tolist()))

    def __repr__(self):
        return f"FiniteFieldElem({self.c.tolist()} mod {self.field.p})"


def point_count(curve: Curve, p: int, n: int, budget: int = DEFAULT_BUDGET) -> int:
    """#X(F_{p^n}) for the smooth model with one point at infinity."""
    if p == 2 or curve.delta % p == 0:
        raise InvalidInput(f"p = {p} is not an odd prime of good reduction")
    if p**n > budget:
        raise BudgetExceeded(f"{p}^{n} exceeds the point-count budget {budget}")
    F = FiniteField(p, n)
    coeffs = curve.Q.coeffs
    total = 1
    for start in range(0, F.q, _CHUNK):
        x = F.elements(start, min(F.q, start + _CHUNK))
        acc = F.constant(coeffs[-1], x.shape[:-1])
        for c in reversed(coeffs[:-1]):
            acc = F.mul(acc, x)
            acc[..., 0] = (acc[..., 0] + c) % p
        total += int(len(x) + F.chi(acc).sum())
    return total


def lpoly_from_counts(p: int, g: int, counts: Sequence[int], status: str = "fallback") -> LPolyRecord:
    """P(T) from N_1..N_g via power sums s_n = p^n + 1 - N_n."""
    if len(counts) < g:
        raise ValueError(f"need {g} counts, got {len(counts)}")
    s = [p**k + 1 - counts[k - 1] for k in range(1, g + 1)]
    e = [1]
    for k in range(1, g + 1):
        acc = sum((-1) ** (i - 1) * e[k - i] * s[i - 1] for i in range(1, k + 1))
        if acc % k:
            raise NonIntegralNewton(f"p={p}: Newton step {k} not integral")
        e.append(acc // k)
    a = [(-1) ** i * e[i] for i in range(g + 1)]
    a += [p ** (g - i) * a[i] for i in range(g - 1, -1, -1)]
    return LPolyRecord(p, status, tuple(a))


def fallback_lpoly(curve: Curve, p: int, budget: int = DEFAULT_BUDGET) -> LPolyRecord:
    counts = [point_count(curve, p, n, budget) for n in range(1, curve.g + 1)]
    rec = lpoly_from_counts(p, curve.g, counts, "fallback")
    rec.check()
    return rec


def direct_mod_product(M: Sequence[IntMatrix], p: int, k_max: int, lam: int) -> IntMatrix:
    """M_0 M_1 ... M_{k_max} mod p^lam, reducing after each product."""
    m = p**lam
    acc = identity(np.shape(M[0])[0]) % m
    for k in range(k_max + 1):
        Mk = M[k] if k < len(M) else identity(acc.shape[0])
        acc = acc.dot(to_matrix(np.asarray(Mk).tolist())) % m
    return acc


def exact_U(curve: Curve, pair: AdmissiblePair, p: int, max_p: int = EXACT_U_MAX_P) -> tuple[Fraction, ...]:
    """Exact reduction of x^(pa-1) y^(-pb+1) dx/y to W_{-1,0}."""
    if p > max_p:
        raise BudgetExceeded(f"exact reduction limited to p <= {max_p}")
    a, b = pair
    n = curve.dim
    omega = DifferentialVector(a * p - 1, (b * p - 1) // 2, (1,) + (0,) * (n - 1))
    out = rational_reduce(omega, full_path(AdmissiblePair(a, b), p), curve)
    assert (out.s, out.t) == (-1, 0)
    return out.coords


def padic_valuation(x: Fraction, p: int) -> int | None:
    """v_p of a rational; None for zero."""
    if x == 0:
        return None
    v, num, den = 0, x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def frac_mod(x: Fraction, m: int) -> int:
    """Residue of a rational with denominator prime to m."""
    return x.numerator * pow(x.denominator, -1, m) % m

