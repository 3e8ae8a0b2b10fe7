"""Exact finite computations around normal subgroup growth of pro-p groups.

Submodules: ``fplin`` (linear algebra over F_p), ``freealg`` (Magnus
expansion and word degrees), ``gscert`` (Golod-Shafarevich certificates),
``pgroups`` (finite groups from Cayley tables), ``fpgmod`` (F_pG-modules),
``growth`` (growth tables and inequality checkers) and ``cli``.
"""

from .config import Limits, limits, use_limits
from .errors import DegreeCapError, DomainError, GrowthError, ParseError, ResourceCapError, UsageError

__version__ = "0.1.0"
