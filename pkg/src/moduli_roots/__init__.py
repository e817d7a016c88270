"""Exact computation and certification of root properties of the Poincare
polynomials of M_{0,n}bar and of the bivariate deformations around them."""

from .poly import BiPoly, ExactRational, IntPoly, NotDivisible, RatPoly
from .realroot import RootInterval, count_roots, isolate_roots
from .recurrences import (
    compute,
    compute_f,
    compute_fhat,
    compute_g,
    compute_hscaled,
    compute_k,
    compute_p,
    compute_phat,
    compute_ptilde,
    compute_s,
)
from .verify import Verdict

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "ExactRational",
    "IntPoly",
    "NotDivisible",
    "RatPoly",
    "RootInterval",
    "Verdict",
    "compute",
    "compute_f",
    "compute_fhat",
    "compute_g",
    "compute_hscaled",
    "compute_k",
    "compute_p",
    "compute_phat",
    "compute_ptilde",
    "compute_s",
    "count_roots",
    "isolate_roots",
]
