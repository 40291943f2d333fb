"""Minimal genus function of second homology classes in small 4-manifolds."""
from .errors import MinGenusError
from .formulas import GenusResult
from .lattice import IntersectionForm, pairing, square

__version__ = "0.1.0"

__all__ = ["GenusResult", "IntersectionForm", "MinGenusError", "pairing", "square",
           "__version__"]
