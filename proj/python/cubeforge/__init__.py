"""Python bindings for the cubeforge C++ core."""

from ._core import *  # noqa: F401,F403
from ._core import CubeforgeError, __version__  # noqa: F401
