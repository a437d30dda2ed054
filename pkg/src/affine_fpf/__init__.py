"""
Affine fixed-point-free involution Stanley symmetric functions: affine
permutations, atoms, the quasiparabolic Bruhat order, Hecke-module canonical
bases and transition formulas, all in exact arithmetic.
"""

__version__ = "0.1.0"

from .affine_group import (
    AffinePerm, InvalidWindowError, code, from_window, inverse, length, parse_window, shape,
    star, transposition,
)
from .fpf import (
    FpfInvolution, NotFpfError, alpha_max, alpha_min, atoms, beta, fpf_code, fpf_stanley, nu,
    parse_fpf, theta,
)
from .symfunc import MonomialExpansion, omega_plus, stanley_expand

__all__ = [
    "__version__",
    "AffinePerm", "InvalidWindowError", "code", "from_window", "inverse", "length",
    "parse_window", "shape", "star", "transposition",
    "FpfInvolution", "NotFpfError", "alpha_max", "alpha_min", "atoms", "beta", "fpf_code",
    "fpf_stanley", "nu", "parse_fpf", "theta",
    "MonomialExpansion", "omega_plus", "stanley_expand",
]
