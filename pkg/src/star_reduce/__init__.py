"""Exact symbolic computations for reduction of *-algebras by a U(1) momentum map.

Submodules: :mod:`scalars` (exact coefficients), :mod:`weyl` (Weyl algebra and
its reduction and compression), :mod:`poly` (polynomial algebra on C^{1+n} and
its reduced spaces), :mod:`states`, :mod:`certify` and the :mod:`cli` front end.
"""

from .errors import StarReduceError
from .parser import parse_element, render
from .scalars import GaussianRational, SymbolicScalar

__all__ = ["GaussianRational", "SymbolicScalar", "StarReduceError", "parse_element", "render"]
__version__ = "0.1.0"
