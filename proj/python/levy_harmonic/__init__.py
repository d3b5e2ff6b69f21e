"""Potential theory of one-dimensional Levy processes."""

from ._core import *  # noqa: F401,F403
from ._core import __version__, synthetic  # noqa: F401
