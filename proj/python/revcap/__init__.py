"""Coherent and reverse coherent information of small quantum channels.

Thin wrapper around the compiled extension module. The command-line tool
`revcap` exposes the same operations for sweeps and verification suites.
"""

from ._revcap import *  # noqa: F401,F403
from ._revcap import __doc__ as _core_doc  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
