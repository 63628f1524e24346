"""Exact computer algebra for the necklace Lie bialgebra, genus-zero
Goldman-Turaev operations on free-group rings, and a degree-by-degree
solver for the Kashiwara-Vergne equations.

All arithmetic is exact (rational); every identity checked by the test
suite is checked with tolerance zero.
"""

__version__ = "0.1.0"

from .ncalg import Context, NCPoly, Series, TensorPoly, bch, nc_exp, nc_log

__all__ = [
    "Context",
    "NCPoly",
    "TensorPoly",
    "Series",
    "bch",
    "nc_exp",
    "nc_log",
    "__version__",
]
