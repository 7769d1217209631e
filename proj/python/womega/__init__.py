"""Finite presentations of weak omega categories."""

from ._core import *  # noqa: F401,F403
from ._core import fixtures  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
