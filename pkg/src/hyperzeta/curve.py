"""Curve input: y^2 = Q(x) with Q monic, squarefree, of odd degree 2g+1."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .bezout import sylvester_resultant
from .errors import EvenDegree, InvalidInput, NotMonic, NotSquarefree
from .poly import Poly, convolve, poly_norm

__all__ = ["Curve", "Poly", "parse_curve", "poly_norm", "poly_pow_coeffs", "read_curve_file"]


@dataclass(frozen=True)
class Curve:
    """Q with its derived constants.

    ``ptop`` and ``pbot`` are the two splittings Q = x^(2g+1) + ptop and
    Q = c0 + x*pbot used by the horizontal and vertical reductions.
    """

    Q: Poly
    g: int
    delta: int
    c0: int
    ptop: Poly
    pbot: Poly

    @property
    def dim(self) -> int:
        return 2 * self.g + 1

    def __str__(self) -> str:
        terms = []
        for i, c in reversed(list(enumerate(self.Q.coeffs))):
            if c:
                mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
                coef = str(c) if (i == 0 or abs(c) != 1) else ("-" if c < 0 else "")
                terms.append(f"{coef}{'*' if coef not in ('', '-') and mono else ''}{mono}")
        return "y^2 = " + " + ".join(terms).replace("+ -", "- ")


def parse_curve(coeffs: Sequence[int]) -> Curve:
    """Build a :class:`Curve` from ascending integer coefficients of Q."""
    coeffs = [int(c) for c in coeffs]
    if len(coeffs) < 2:
        raise InvalidInput("Q must have degree at least 3")
    if coeffs[-1] != 1:
        raise NotMonic(f"leading coefficient is {coeffs[-1]}, expected 1")
    deg = len(coeffs) - 1
    if deg % 2 == 0:
        raise EvenDegree(f"degree {deg} is even")
    if deg < 3:
        raise InvalidInput(f"degree {deg} < 3")
    Q = Poly(coeffs)
    delta = sylvester_resultant(Q, Q.derivative())
    if delta == 0:
        raise NotSquarefree(f"{Q} has a repeated factor")
    g = (deg - 1) // 2
    return Curve(
        Q=Q,
        g=g,
        delta=delta,
        c0=coeffs[0],
        ptop=Poly(coeffs[:-1]),
        pbot=Poly(coeffs[1:]),
    )


def parse_coeff_string(text: str) -> list[int]:
    try:
        return [int(tok) for tok in text.replace(" ", "").split(",") if tok]
    except ValueError as exc:
        raise InvalidInput(f"cannot parse coefficients {text!r}") from exc


def read_curve_file(path: str | Path) -> Curve:
    """Read a one-line file of comma-separated ascending coefficients."""
    lines = [ln.strip() for ln in Path(path).read_text().splitlines() if ln.strip()]
    if len(lines) != 1:
        raise InvalidInput(f"{path}: expected a single line of coefficients")
    return parse_curve(parse_coeff_string(lines[0]))


def poly_pow_coeffs(curve: Curve, mu: int) -> list[list[int]]:
    """C[j][r] = coefficient of x^r in Q^j, for 0 <= j < mu."""
    if mu < 1:
        raise ValueError("mu must be positive")
    table = [[1]]
    for _ in range(1, mu):
        table.append(convolve(table[-1], curve.Q.coeffs))
    return table
