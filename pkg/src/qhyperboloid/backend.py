"""Kernel backend selection.

Prefers the compiled extension `qhyperboloid._kernel` unless it is missing
or QHYPERBOLOID_PURE is set; falls back to the pure-Python kernels.  The
rational coefficient type is chosen independently: gmpy2.mpq when available
(QHYPERBOLOID_NO_GMPY disables it), fractions.Fraction otherwise.
"""

import os
from fractions import Fraction

if os.environ.get("QHYPERBOLOID_PURE"):
    from . import _kernel_py as kernel
else:
    try:
        from . import _kernel as kernel  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernel_py as kernel

if os.environ.get("QHYPERBOLOID_NO_GMPY"):
    RAT = Fraction
else:
    try:
        from gmpy2 import mpq as RAT  # type: ignore[no-redef]
    except ImportError:
        RAT = Fraction

BACKEND = kernel.BACKEND

__all__ = ["kernel", "RAT", "BACKEND", "Fraction"]
