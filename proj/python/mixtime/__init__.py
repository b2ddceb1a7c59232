"""Mixing-time estimation for finite ergodic Markov chains.

The heavy lifting lives in the compiled ``_mixtime`` extension; this package
just re-exports its public surface.
"""

from ._mixtime import *  # noqa: F401,F403
from ._mixtime import __version__  # noqa: F401
