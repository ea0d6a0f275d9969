"""Exact exterior calculus for multisymplectic geometry on coordinate charts."""

from .polynomial import Chart, Polynomial
from .exterior import (
    Form,
    MultiVec,
    wedge,
    hook,
    ext_d,
    lie_derivative,
    schouten,
    poincare_homotopy,
    is_closed,
    is_exact,
)

__version__ = "0.1.0"

__all__ = [
    "Chart",
    "Polynomial",
    "Form",
    "MultiVec",
    "wedge",
    "hook",
    "ext_d",
    "lie_derivative",
    "schouten",
    "poincare_homotopy",
    "is_closed",
    "is_exact",
]
