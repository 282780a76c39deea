"""Simulation and verification toolkit for heavy-tailed stationary series.

The compiled extension module ``extremelab._core`` carries the actual
implementation; this package re-exports its public names.
"""

from extremelab._core import *  # noqa: F401,F403
from extremelab._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
