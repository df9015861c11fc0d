"""Entanglement analysis of fixed-particle-number bosonic states."""

from ._bosent import *  # noqa: F401,F403
from ._bosent import __doc__  # noqa: F401
