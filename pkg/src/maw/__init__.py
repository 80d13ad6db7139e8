"""Exact finite-scale workbench for measure algebras and their categorical structure.

Submodules: :mod:`boolalg`, :mod:`stoned`, :mod:`proba`, :mod:`funcalg`,
:mod:`canmodel`, :mod:`disint`, :mod:`kolmo`, :mod:`lawcheck` (with concrete
instances in :mod:`instances` and named suites in :mod:`suites`),
:mod:`serialize` and :mod:`cli`.
"""

from . import boolalg, canmodel, disint, funcalg, kolmo, lawcheck, proba, stoned
from .errors import MawError

__version__ = "0.1.0"

__all__ = ["boolalg", "stoned", "proba", "funcalg", "canmodel", "disint", "kolmo", "lawcheck", "MawError"]
