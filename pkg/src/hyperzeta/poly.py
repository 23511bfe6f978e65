"""Dense univariate polynomials over Z, plus a few helpers over Z/pZ.

Coefficients are stored ascending by degree: ``coeffs[i]`` multiplies x^i.
The zero polynomial is the empty tuple.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import zip_longest
from typing import Iterable, Sequence


def _trim(coeffs: Iterable[int]) -> tuple[int, ...]:
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return tuple(int(x) for x in c)


@dataclass(frozen=True)
class Poly:
    coeffs: tuple[int, ...]

    def __init__(self, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "coeffs", _trim(coeffs))

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> Poly:
        return cls([0] * k + [c])

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> int:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other: Poly) -> Poly:
        return Poly(a + b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    def __sub__(self, other: Poly) -> Poly:
        return Poly(a - b for a, b in zip_longest(self.coeffs, other.coeffs, fillvalue=0))

    def __neg__(self) -> Poly:
        return Poly(-a for a in self.coeffs)

    def __mul__(self, other: Poly | int) -> Poly:
        if isinstance(other, int):
            return Poly(other * a for a in self.coeffs)
        return Poly(convolve(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def shift(self, k: int) -> Poly:
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return Poly([0] * k + list(self.coeffs))

    def derivative(self) -> Poly:
        return Poly(i * a for i, a in enumerate(self.coeffs) if i > 0)

    def __call__(self, x):
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def __repr__(self) -> str:
        return f"Poly({list(self.coeffs)})"


def convolve(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def poly_norm(f: Poly) -> int:
    """Maximum absolute value of the coefficients (0 for the zero polynomial)."""
    return max((abs(c) for c in f.coeffs), default=0)


# --- arithmetic in F_p[x]; lists of residues, ascending, trimmed -----------

def _trim_mod(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def pmod(f: Sequence[int], p: int) -> list[int]:
    return _trim_mod([int(a) % p for a in f])


def padd(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    return _trim_mod([(a + b) % p for a, b in zip_longest(f, g, fillvalue=0)])


def psub(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    return _trim_mod([(a - b) % p for a, b in zip_longest(f, g, fillvalue=0)])


def pmul(f: Sequence[int], g: Sequence[int], p: int) -> list[int]:
    return _trim_mod([c % p for c in convolve(f, g)])


def pdivmod(f: Sequence[int], g: Sequence[int], p: int) -> tuple[list[int], list[int]]:
    g = pmod(g, p)
    if not g:
        raise ZeroDivisionError("division by zero polynomial")
    r = pmod(f, p)
    inv = pow(g[-1], -1, p)
    dg = len(g) - 1
    q = [0] * max(len(r) - dg, 0)
    while len(r) - 1 >= dg and r:
        k = len(r) - 1 - dg
        c = r[-1] * inv % p
        q[k] = c
        for i, gi in enumerate(g):
            r[i + k] = (r[i + k] - c * gi) % p
        _trim_mod(r)
    return _trim_mod(q), r


def pxgcd(f: Sequence[int], g: Sequence[int], p: int) -> tuple[list[int], list[int], list[int]]:
    """Return (d, u, v) with u*f + v*g = d, d monic gcd, over F_p."""
    r0, r1 = pmod(f, p), pmod(g, p)
    u0, u1 = [1], []
    v0, v1 = [], [1]
    while r1:
        q, r = pdivmod(r0, r1, p)
        r0, r1 = r1, r
        u0, u1 = u1, psub(u0, pmul(q, u1, p), p)
        v0, v1 = v1, psub(v0, pmul(q, v1, p), p)
    if not r0:
        return [], u0, v0
    inv = pow(r0[-1], -1, p)
    return ([c * inv % p for c in r0], [c * inv % p for c in u0], [c * inv % p for c in v0])


def ppowmod(base: Sequence[int], e: int, modulus: Sequence[int], p: int) -> list[int]:
    result = [1]
    b = pdivmod(base, modulus, p)[1]
    while e:
        if e & 1:
            result = pdivmod(pmul(result, b, p), modulus, p)[1]
        b = pdivmod(pmul(b, b, p), modulus, p)[1]
        e >>= 1
    return result


def is_irreducible_mod(f: Sequence[int], p: int) -> bool:
    """Rabin's test for a monic f over F_p."""
    f = pmod(f, p)
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    x = [0, 1]
    prime_divisors = [q for q in range(2, n + 1) if n % q == 0 and all(q % r for r in range(2, q))]
    for q in prime_divisors:
        h = psub(ppowmod(x, p ** (n // q), f, p), x, p)
        d, _, _ = pxgcd(f, h, p)
        if len(d) != 1:
            return False
    return not psub(ppowmod(x, p**n, f, p), x, p)
