"""Random case generators shared by the unit and acceptance suites."""

import random
from fractions import Fraction

from hyperzeta.curve import parse_curve
from hyperzeta.poly import Poly
from hyperzeta.reduction import DifferentialVector, exact_differential, rational_reduce

CURVES = [
    parse_curve([1, 1, 0, 1]),
    parse_curve([0, -1, 0, 1]),
    parse_curve([1, -1, 0, 0, 0, 1]),
    parse_curve([2, 0, -3, 0, 0, 1]),
    parse_curve([0, 1, 0, 0, 0, 1]),
    parse_curve([1, 1, 0, 0, 0, 0, 0, 1]),
]


def random_path(rng, curve, s, t):
    """A random legal step word from W_{s,t} to W_{-1,0}, or None."""
    n = curve.dim
    hi = min(s + 1, t)
    lo = t if curve.c0 == 0 else 0
    if lo > hi:
        return None
    for _ in range(100):
        d = rng.randint(lo, hi)
        steps = list("D" * d + "H" * (s + 1 - d) + "V" * (t - d))
        rng.shuffle(steps)
        if steps and steps[-1] == "V":
            continue
        ss, tt, ok = s, t, True
        for st in steps:
            if st == "H" and n * (2 * tt - 1) - 2 * ss == 0:
                ok = False
                break
            ss -= st in "HD"
            tt -= st in "DV"
        if ok:
            return "".join(steps)
    return None


def path_independence_cases(n_cases, seed=11):
    rng = random.Random(seed)
    out = []
    while len(out) < n_cases:
        c = rng.choice(CURVES)
        s, t = rng.randint(0, 12), rng.randint(0, 5)
        p1, p2 = random_path(rng, c, s, t), random_path(rng, c, s, t)
        if p1 is None or p2 is None:
            continue
        v = DifferentialVector(s, t, tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in range(c.dim)))
        out.append((c, v, p1, p2))
    return out


def exactness_cases(n_cases, seed=12):
    rng = random.Random(seed)
    out = []
    while len(out) < n_cases:
        c = rng.choice(CURVES)
        s, t = rng.randint(1, 12), rng.randint(0, 5)
        if c.dim * (2 * t - 1) - 2 * s == 0:
            continue
        path = random_path(rng, c, s - 1, t)
        if path is None:
            continue
        out.append((c, s, t, path))
    return out


def check_path_independence(case):
    c, v, p1, p2 = case
    return rational_reduce(v, p1, c) == rational_reduce(v, p2, c)


def check_exactness(case):
    c, s, t, path = case
    hi, lo = exact_differential(c, s, t)
    a = rational_reduce(hi, "H" + path, c)
    b = rational_reduce(lo, path, c)
    return (a.s, a.t) == (b.s, b.t) == (-1, 0) and all(x + y == 0 for x, y in zip(a.coords, b.coords))


def random_poly(rng, deg, bound):
    c = [rng.randint(-bound, bound) for _ in range(deg)]
    lead = rng.choice([x for x in range(-bound, bound + 1) if x])
    return Poly(c + [lead])


def check_identities(F, G, bz):
    m, n = F.degree, G.degree
    assert len(bz.R) == len(bz.S) == m + n
    for i, (R, S) in enumerate(zip(bz.R, bz.S)):
        assert F * R + G * S == Poly.monomial(i, bz.delta)
        assert R.degree < n and S.degree < m




def random_coprime_pairs(n_pairs, seed=2024):
    from hyperzeta.bezout import sylvester_resultant

    rng = random.Random(seed)
    out = []
    while len(out) < n_pairs:
        F = random_poly(rng, rng.randint(1, 7), 10 ** rng.randint(1, 4))
        G = random_poly(rng, rng.randint(1, 6), 10 ** rng.randint(1, 4))
        if sylvester_resultant(F, G) != 0:
            out.append((F, G))
    return out
