"""Exact computation engine for the quantum hyperboloid.

Builds tensor powers of the spin-1 module of U_q(sl(2)), their isotypic
decompositions, the covariant quotient algebras A(hbar, c), the braided
bracket with its adjoint operators, and the tangent module with its
anchor action — exactly, over Q(q) or at a fixed rational q.
"""

from .backend import BACKEND
from .scalar import LaurentPoly, QScalar, numeric, parse_scalar, q_power, qint, symbolic

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "LaurentPoly",
    "QScalar",
    "numeric",
    "parse_scalar",
    "q_power",
    "qint",
    "symbolic",
    "__version__",
]
