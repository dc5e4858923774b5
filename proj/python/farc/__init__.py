"""Terahertz reflection-coefficient models for building materials."""

from ._farc import *  # noqa: F401,F403
from ._farc import __doc__  # noqa: F401
