"""Objectivity bounds for infinite-dimensional quantum Darwinism.

Thin re-export of the compiled extension; see the package README for the
formula conventions and the CLI that wraps the same operations.
"""

from qdarwin._core import *  # noqa: F401,F403
from qdarwin._core import __version__  # noqa: F401
