"""Exact double affine Hecke algebra computations.

Nonsymmetric Macdonald polynomials by intertwiner chains and by an
independent triangular eigen-solve, the duality pairing and its radical,
finite-dimensional quotients at roots of unity and their Jordan and
projective PSL(2,Z) structure.  All arithmetic is exact.
"""

__version__ = "0.1.0"

from .errors import DahaError
from .macdonald import MacdonaldEngine, singular_k_scan
from .polyrep import PolynomialRep
from .rootdata import build_root_datum, make_lattice, rho_k
from .scalars import CycTContext, QtContext, Specialization

__all__ = [
    "DahaError",
    "MacdonaldEngine",
    "PolynomialRep",
    "QtContext",
    "CycTContext",
    "Specialization",
    "build_root_datum",
    "make_lattice",
    "rho_k",
    "singular_k_scan",
    "__version__",
]
