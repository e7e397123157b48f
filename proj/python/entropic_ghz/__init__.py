"""Entropic GHZ paradox toolkit.

Thin wrapper over the C++ core: quantum states and measurements, the
entropic and correlation Mermin inequalities, white-noise thresholds, the
compression form of the inequality and the LHV feasibility test.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__  # noqa: F401

__version__ = "0.1.0"
