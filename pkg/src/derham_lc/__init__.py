"""Exact De Rham homology of localized polynomial modules and local cohomology,
with the commutative-algebra kernel (Groebner bases, Hilbert degrees, point
counts) it needs."""

__version__ = "0.1.0"

from .algebra import Polynomial, VariableContext
from .derham import DeRhamResult, WindowSchedule, chi, chi_c, derham_homology
from .groebner import Ideal, buchberger
from .locmod import LocalizedModuleSpec, TruncationWindow

__all__ = [
    "DeRhamResult",
    "Ideal",
    "LocalizedModuleSpec",
    "Polynomial",
    "TruncationWindow",
    "VariableContext",
    "WindowSchedule",
    "buchberger",
    "chi",
    "chi_c",
    "derham_homology",
]
