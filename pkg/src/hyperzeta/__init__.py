"""L-polynomials of y^2 = Q(x) at all good odd primes p < N via accumulating remainder trees."""

from .curve import Curve, parse_curve
from .bezout import BezoutData, bezout_cofactors, sylvester_resultant
from .frobenius import FrobContext, FrobMatrix, UEntry, frobenius_matrices, precision_mu
from .oracle import fallback_lpoly, lpoly_from_counts, point_count
from .rtree import accumulating_remainder_tree
from .zeta import LPolyRecord, charpoly_mod, lift_weil_lpoly
from .cli import RunConfig, compute_records, run_pipeline

__all__ = [
    "Curve", "parse_curve", "BezoutData", "bezout_cofactors", "sylvester_resultant",
    "FrobContext", "FrobMatrix", "UEntry", "frobenius_matrices", "precision_mu",
    "fallback_lpoly", "lpoly_from_counts", "point_count", "accumulating_remainder_tree",
    "LPolyRecord", "charpoly_mod", "lift_weil_lpoly", "RunConfig", "compute_records", "run_pipeline",
]

__version__ = "0.1.0"
