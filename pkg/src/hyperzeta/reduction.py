"""Reduction maps between the spaces W_{s,t} of differentials.

W_{s,t} is spanned by x^(s+k) y^(-2t) dx/y for 0 <= k <= 2g; a vector of
length 2g+1 holds coordinates against that basis. For s = -1 the first
coordinate is zero. Three elementary maps move between these spaces:

* horizontal  W_{s,t} -> W_{s-1,t},   D_H(s,t)^-1 M_H(s,t)
* diagonal    W_{s,t} -> W_{s-1,t-1}, (delta D_D(t))^-1 M_D(s,t)
* vertical    W_{s,t} -> W_{s,t-1},   (c0 delta D_V(t))^-1 M_V(s,t)

with M_* matrices whose entries are linear in (s, t). Composites of these
carry x^(ap-1) y^(-bp+1) dx/y down to W_{-1,0} along a path that does not
depend on p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import NamedTuple, Sequence

import gmpy2
import numpy as np

from .bezout import BezoutData, bezout_cofactors
from .curve import Curve
from .errors import IllegalStep, ZeroConstantTerm
from .rtree import IntMatrix, to_matrix


class LinForm(NamedTuple):
    """a0 + a_s*s + a_t*t."""

    a0: int
    a_s: int
    a_t: int

    def __call__(self, s: int, t: int) -> int:
        return self.a0 + self.a_s * s + self.a_t * t


@dataclass(frozen=True, eq=False)
class LinMatrix:
    """Square matrix with entries a0 + a_s*s + a_t*t, stored as three
    integer matrices of the same shape."""

    const: IntMatrix
    s_part: IntMatrix
    t_part: IntMatrix

    @classmethod
    def from_entries(cls, entries: Sequence[Sequence[tuple[int, int, int]]]) -> LinMatrix:
        return cls(
            to_matrix([[e[0] for e in row] for row in entries]),
            to_matrix([[e[1] for e in row] for row in entries]),
            to_matrix([[e[2] for e in row] for row in entries]),
        )

    @property
    def dim(self) -> int:
        return self.const.shape[0]

    def entry(self, i: int, j: int) -> tuple[int, int, int]:
        return (int(self.const[i, j]), int(self.s_part[i, j]), int(self.t_part[i, j]))

    def entries(self) -> list[list[tuple[int, int, int]]]:
        return [[self.entry(i, j) for j in range(self.dim)] for i in range(self.dim)]


def eval_linmat(M: LinMatrix, s: int, t: int) -> IntMatrix:
    return M.const + M.s_part * gmpy2.mpz(s) + M.t_part * gmpy2.mpz(t)


def _empty(n: int) -> list[list[list[int]]]:
    return [[[0, 0, 0] for _ in range(n)] for _ in range(n)]


def _freeze(entries) -> LinMatrix:
    return LinMatrix.from_entries([[tuple(e) for e in row] for row in entries])


def build_horizontal(curve: Curve) -> tuple[LinMatrix, LinForm]:
    g, n = curve.g, curve.dim
    D_H = LinForm(-(2 * g + 1), -2, 2 * (2 * g + 1))
    E = _empty(n)
    for k in range(1, n):
        E[k][k - 1] = list(D_H)
    # last column: coefficients of 2s*P - (2t-1)*x*P', P = Q - x^(2g+1)
    for k in range(n):
        c = curve.ptop[k]
        E[k][n - 1] = [k * c, 2 * c, -2 * k * c]
    return _freeze(E), D_H


def build_diagonal(curve: Curve, bz: BezoutData) -> tuple[LinMatrix, LinForm, int]:
    n = curve.dim
    E = _empty(n)
    for i in range(n):
        R, S = bz.R[i], bz.S[i]
        # (2t-1) x R_i + 2s S_i + 2x S_i'
        for k in range(n):
            r = R[k - 1] if k >= 1 else 0
            E[k][i] = [2 * k * S[k] - r, 2 * S[k], 2 * r]
    return _freeze(E), LinForm(-1, 0, 2), bz.delta


def build_vertical(curve: Curve, bz: BezoutData) -> tuple[LinMatrix, LinForm, int]:
    c0 = curve.c0
    if c0 == 0:
        raise ZeroConstantTerm("vertical reduction needs a nonzero constant term")
    n = curve.dim
    dQ = curve.Q.derivative()
    P = curve.pbot
    E = _empty(n)
    for i in range(n):
        R, S = bz.R[i], bz.S[i]
        h = S[0]
        # (2t-3) h Q' - 2 h s P + (2t-1) c0 R + 2 c0 s T + 2 c0 S',  S = h + x T
        for k in range(n):
            T_k = S[k + 1]
            E[k][i] = [
                -3 * h * dQ[k] - c0 * R[k] + 2 * c0 * (k + 1) * S[k + 1],
                -2 * h * P[k] + 2 * c0 * T_k,
                2 * h * dQ[k] + 2 * c0 * R[k],
            ]
    return _freeze(E), LinForm(-1, 0, 2), c0 * bz.delta


@dataclass(frozen=True, eq=False)
class ReductionMaps:
    curve: Curve
    bezout: BezoutData
    M_H: LinMatrix
    D_H: LinForm
    M_D: LinMatrix
    D_D: LinForm
    delta: int
    M_V: LinMatrix | None
    D_V: LinForm | None
    vscale: int | None


@lru_cache(maxsize=16)
def reduction_maps(curve: Curve) -> ReductionMaps:
    bz = bezout_cofactors(curve.Q, curve.Q.derivative())
    M_H, D_H = build_horizontal(curve)
    M_D, D_D, delta = build_diagonal(curve, bz)
    if curve.c0 != 0:
        M_V, D_V, vscale = build_vertical(curve, bz)
    else:
        M_V = D_V = vscale = None
    return ReductionMaps(curve, bz, M_H, D_H, M_D, D_D, delta, M_V, D_V, vscale)


# --- admissible pairs ------------------------------------------------------

class AdmissiblePair(NamedTuple):
    a: int
    b: int

    @property
    def case(self) -> str:
        return "diag-then-horiz" if self.b <= 2 * self.a else "diag-then-vert"


def admissible_pairs(g: int, mu: int, c0: int) -> list[AdmissiblePair]:
    """Exponent pairs (a, b) needed by the Frobenius expansion, sorted by (b, a)."""
    if mu < 1:
        raise ValueError("mu must be positive")
    out = []
    for j in range(mu):
        b = 2 * j + 1
        lo = 1 if c0 != 0 else j + 1
        for a in range(lo, (2 * g + 1) * (j + 1)):
            out.append(AdmissiblePair(a, b))
    return out


# --- composite matrices ----------------------------------------------------

def _chain(factors: list[IntMatrix]) -> IntMatrix:
    # factors listed in application order; returns F_last ... F_1 F_0
    acc = factors[0]
    for F in factors[1:]:
        acc = F.dot(acc)
    return acc


def reduce_to_zero_matrix(curve: Curve, pair: AdmissiblePair, r: int) -> tuple[IntMatrix, int]:
    """Integer matrix M and nonzero D with D^-1 M : W_{a(2r+1)-1, (b(2r+1)-1)/2}
    -> W_{a(2r-1)-1, (b(2r-1)-1)/2}."""
    if r < 1:
        raise ValueError("r must be positive")
    rm = reduction_maps(curve)
    a, b = pair
    s0 = a * (2 * r + 1) - 1
    t0 = (b * (2 * r + 1) - 1) // 2
    factors, D = [], 1
    if b <= 2 * a:
        for k in range(b):
            factors.append(eval_linmat(rm.M_D, s0 - k, t0 - k))
            D *= rm.D_D(s0 - k, t0 - k)
        D *= rm.delta**b
        s1, t1 = s0 - b, t0 - b
        for k in range(2 * a - b):
            factors.append(eval_linmat(rm.M_H, s1 - k, t1))
            D *= rm.D_H(s1 - k, t1)
    else:
        if rm.M_V is None:
            raise ZeroConstantTerm(f"pair {pair} needs vertical steps but c0 = 0")
        for k in range(2 * a):
            factors.append(eval_linmat(rm.M_D, s0 - k, t0 - k))
            D *= rm.D_D(s0 - k, t0 - k)
        D *= rm.delta ** (2 * a)
        s1, t1 = s0 - 2 * a, t0 - 2 * a
        for k in range(b - 2 * a):
            factors.append(eval_linmat(rm.M_V, s1, t1 - k))
            D *= rm.D_V(s1, t1 - k)
        D *= rm.vscale ** (b - 2 * a)
    return _chain(factors), D


def _step_in_r(M: LinMatrix, s_lin: tuple[int, int], t_lin: tuple[int, int]) -> tuple[IntMatrix, IntMatrix]:
    # M(s, t) with s = s_lin[0] + s_lin[1] r, t = t_lin[0] + t_lin[1] r, as A + B r
    A = M.const + M.s_part * s_lin[0] + M.t_part * t_lin[0]
    B = M.s_part * s_lin[1] + M.t_part * t_lin[1]
    return A, B


def _poly_mat_mul_linear(coeffs: list[IntMatrix], A: IntMatrix, B: IntMatrix) -> list[IntMatrix]:
    # (A + B r) * sum_k coeffs[k] r^k
    out = [A.dot(c) for c in coeffs] + [None]
    for k, c in enumerate(coeffs):
        term = B.dot(c)
        out[k + 1] = term if out[k + 1] is None else out[k + 1] + term
    return out


def _poly_mul_linear(coeffs: list[int], a: int, b: int) -> list[int]:
    out = [a * c for c in coeffs] + [0]
    for k, c in enumerate(coeffs):
        out[k + 1] += b * c
    return out


def zero_matrix_poly(curve: Curve, pair: AdmissiblePair) -> tuple[list[IntMatrix], list[int]]:
    """reduce_to_zero_matrix as polynomials in r.

    Returns coefficient lists (ascending in r) of M_r and D_r, so that the
    whole sequence r = 1, 2, ... can be produced by evaluation.
    """
    rm = reduction_maps(curve)
    a, b = pair
    h = (b - 1) // 2
    # s0 = 2a r + (a - 1), t0 = b r + h
    steps = []
    if b <= 2 * a:
        for k in range(b):
            steps.append((rm.M_D, rm.D_D, rm.delta, (a - 1 - k, 2 * a), (h - k, b)))
        for k in range(2 * a - b):
            steps.append((rm.M_H, rm.D_H, 1, (a - 1 - b - k, 2 * a), (h - b, b)))
    else:
        if rm.M_V is None:
            raise ZeroConstantTerm(f"pair {pair} needs vertical steps but c0 = 0")
        for k in range(2 * a):
            steps.append((rm.M_D, rm.D_D, rm.delta, (a - 1 - k, 2 * a), (h - k, b)))
        for k in range(b - 2 * a):
            steps.append((rm.M_V, rm.D_V, rm.vscale, (a - 1 - 2 * a, 2 * a), (h - 2 * a - k, b)))
    Mc = [to_matrix(np.eye(curve.dim, dtype=int).tolist())]
    Dc, scale = [1], 1
    for M, form, sc, s_lin, t_lin in steps:
        A, B = _step_in_r(M, s_lin, t_lin)
        Mc = _poly_mat_mul_linear(Mc, A, B)
        f0 = form.a0 + form.a_s * s_lin[0] + form.a_t * t_lin[0]
        f1 = form.a_s * s_lin[1] + form.a_t * t_lin[1]
        Dc = _poly_mul_linear(Dc, f0, f1)
        scale *= sc
    return Mc, [scale * c for c in Dc]


def zero_matrix_sequence(curve: Curve, pair: AdmissiblePair, B: int) -> tuple[list[IntMatrix], list[int]]:
    """[reduce_to_zero_matrix(curve, pair, r) for r in 1..B-1], by vectorised Horner."""
    if B <= 1:
        return [], []
    Mc, Dc = zero_matrix_poly(curve, pair)
    r = np.array([gmpy2.mpz(x) for x in range(1, B)], dtype=object)
    rr = r[:, None, None]
    acc = np.broadcast_to(Mc[-1], (B - 1,) + Mc[-1].shape).copy()
    for c in reversed(Mc[:-1]):
        acc = acc * rr + c
    dacc = np.full(B - 1, gmpy2.mpz(Dc[-1]), dtype=object)
    for c in reversed(Dc[:-1]):
        dacc = dacc * r + c
    return list(acc), [int(x) for x in dacc]


def final_reduction_matrix(curve: Curve, pair: AdmissiblePair) -> tuple[IntMatrix, int]:
    """Integer matrix M0 and nonzero D0 with D0^-1 M0 : W_{a-1,(b-1)/2} -> W_{-1,0}."""
    rm = reduction_maps(curve)
    a, b = pair
    h = (b - 1) // 2
    s, t = a - 1, h
    factors, D = [], 1
    if b <= 2 * a:
        for _ in range(h):
            factors.append(eval_linmat(rm.M_D, s, t))
            D *= rm.delta * rm.D_D(s, t)
            s, t = s - 1, t - 1
        for _ in range(a - h):
            factors.append(eval_linmat(rm.M_H, s, t))
            D *= rm.D_H(s, t)
            s -= 1
    else:
        if rm.M_V is None:
            raise ZeroConstantTerm(f"pair {pair} needs vertical steps but c0 = 0")
        for _ in range(h - a):
            factors.append(eval_linmat(rm.M_V, s, t))
            D *= rm.vscale * rm.D_V(s, t)
            t -= 1
        for _ in range(a):
            factors.append(eval_linmat(rm.M_D, s, t))
            D *= rm.delta * rm.D_D(s, t)
            s, t = s - 1, t - 1
    assert (s, t) == (-1, 0) and factors
    return _chain(factors), D


# --- step paths and the exact-rational oracle ------------------------------

def zero_path(pair: AdmissiblePair) -> str:
    """Step kinds of one reduce_to_zero_matrix block, in application order."""
    a, b = pair
    if b <= 2 * a:
        return "D" * b + "H" * (2 * a - b)
    return "D" * (2 * a) + "V" * (b - 2 * a)


def final_path(pair: AdmissiblePair) -> str:
    a, b = pair
    h = (b - 1) // 2
    if b <= 2 * a:
        return "D" * h + "H" * (a - h)
    return "V" * (h - a) + "D" * a


def full_path(pair: AdmissiblePair, p: int) -> str:
    """Path from W_{ap-1,(bp-1)/2} to W_{-1,0}."""
    return zero_path(pair) * ((p - 1) // 2) + final_path(pair)


@dataclass(frozen=True)
class DifferentialVector:
    s: int
    t: int
    coords: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "coords", tuple(Fraction(c) for c in self.coords))
        if self.s < -1:
            raise ValueError("s must be at least -1")
        if self.s == -1 and self.coords and self.coords[0] != 0:
            raise ValueError("first coordinate must vanish in W_{-1,t}")


def rational_reduce(omega: DifferentialVector, steps: str | Sequence[str], curve: Curve) -> DifferentialVector:
    """Apply reduction steps ('H', 'D', 'V') with exact rational arithmetic.

    The vector is carried as integer numerators over one common
    denominator, which is cancelled only at the end.
    """
    rm = reduction_maps(curve)
    den = 1
    for c in omega.coords:
        den = den * c.denominator // gcd(den, c.denominator)
    vec = np.array([gmpy2.mpz(c.numerator * (den // c.denominator)) for c in omega.coords], dtype=object)
    den = gmpy2.mpz(den)
    s, t = omega.s, omega.t
    for step in steps:
        if s < 0:
            raise IllegalStep(f"no step {step!r} out of W_{{{s},{t}}}")
        if step == "H":
            vec = eval_linmat(rm.M_H, s, t).dot(vec)
            den *= rm.D_H(s, t)
            s -= 1
        elif step == "D":
            vec = eval_linmat(rm.M_D, s, t).dot(vec)
            den *= rm.delta * rm.D_D(s, t)
            s, t = s - 1, t - 1
        elif step == "V":
            if rm.M_V is None:
                raise IllegalStep("vertical step needs c0 != 0")
            vec = eval_linmat(rm.M_V, s, t).dot(vec)
            den *= rm.vscale * rm.D_V(s, t)
            t -= 1
        else:
            raise IllegalStep(f"unknown step {step!r}")
    return DifferentialVector(s, t, tuple(Fraction(int(x), int(den)) for x in vec))


def exact_differential(curve: Curve, s: int, t: int) -> tuple[DifferentialVector, DifferentialVector]:
    """d(x^s y^(-2t+1)) split as (part in W_{s,t}, part in W_{s-1,t}), s >= 1."""
    if s < 1:
        raise ValueError("s must be at least 1")
    # (s Q - (2t-1)/2 x Q') x^(s-1) y^(-2t) dx/y
    n = curve.dim
    Q, dQ = curve.Q, curve.Q.derivative()
    F = [Fraction(s * Q[k]) - Fraction(2 * t - 1, 2) * (dQ[k - 1] if k else 0) for k in range(n + 1)]
    hi = DifferentialVector(s, t, tuple([Fraction(0)] * (n - 1) + [F[n]]))
    lo = DifferentialVector(s - 1, t, tuple(F[:n]))
    return hi, lo
