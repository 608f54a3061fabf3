"""Separability toolkit for identical-boson (permutation-symmetric) states."""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
