"""Information gain, relative entropy, and entropy production for symbolic
dynamics, backed by the C++ core."""

from infodyn._core import *  # noqa: F401,F403
from infodyn._core import __doc__  # noqa: F401
