"""Numerical CMC graphs in anti-de Sitter space."""

from ._adscmc import *  # noqa: F401,F403
from ._adscmc import __doc__  # noqa: F401
