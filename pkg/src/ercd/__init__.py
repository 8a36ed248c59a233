"""Exact symbolic verification of extended real Clifford-Dirac algebra claims.

Layers, bottom up: :mod:`exact_scalar` (the field of symbol coefficients),
:mod:`op_algebra` (normal-ordered operators), :mod:`catalog` (named
objects), :mod:`lie_verify` (structure checks, invariance, Casimirs, audit),
:mod:`opdsl` (expression language) and :mod:`cli`.
"""

from .catalog import Conventions, DEFAULT_CONVENTIONS
from .exact_scalar import FieldElem, Sample
from .op_algebra import Operator

__all__ = ["Conventions", "DEFAULT_CONVENTIONS", "FieldElem", "Operator", "Sample"]
__version__ = "0.1.0"
