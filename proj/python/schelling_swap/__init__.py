"""Swap Schelling games with single-peaked utilities.

Rationals (peak positions, utilities, ratios) are exchanged as "p/q" strings.
"""

from ._schelling import *  # noqa: F401,F403
from ._schelling import __version__  # noqa: F401
