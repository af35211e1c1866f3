"""Exact computations for the Takagi function: level sets, the deficient
digit set, the singular measure and dimension experiments."""

__version__ = "0.1.0"

from .arith import BinaryExpansion, from_rational, parse_expansion  # noqa: E402
from .evaluation import tau, tau_bounds, tau_dyadic  # noqa: E402

__all__ = [
    "BinaryExpansion",
    "__version__",
    "from_rational",
    "parse_expansion",
    "tau",
    "tau_bounds",
    "tau_dyadic",
]
