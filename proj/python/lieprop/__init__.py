"""Propagators for the harmonic oscillator with an inverse-square potential."""

from ._lieprop import *  # noqa: F401,F403
from ._lieprop import __doc__  # noqa: F401

__version__ = "0.1.0"
