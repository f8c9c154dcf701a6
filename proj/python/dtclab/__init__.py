"""Kicked-Ising chain simulation lab: python bindings for the C++ core."""

from ._dtclab import *  # noqa: F401,F403
from ._dtclab import __doc__  # noqa: F401
