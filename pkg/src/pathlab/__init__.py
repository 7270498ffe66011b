"""pathlab: a numerical verification lab for classic calculus pathologies.

Catalog of counterexample functions, finite-difference scans, oscillatory
improper integrals, curve reparametrization, and planar extremum traps,
with a CLI (``pathlab``) that runs named verification cases and emits
machine-readable reports.
"""

from .config import LabConfig
from .intervals import Interval

__all__ = ["Interval", "LabConfig"]
__version__ = "0.1.0"
