"""Pseudo-spectral laboratory for the random vorticity equation.

The heavy lifting lives in the C++ extension; this package re-exports it.
"""

from vortexlab._core import *  # noqa: F401,F403
from vortexlab._core import __doc__  # noqa: F401
