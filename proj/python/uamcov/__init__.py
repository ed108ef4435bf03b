"""Monte Carlo SIR coverage for aircraft flying in Poisson-line air corridors."""

from uamcov._core import *  # noqa: F401,F403
from uamcov._core import __doc__  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
