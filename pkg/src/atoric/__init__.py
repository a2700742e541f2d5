"""Exact-arithmetic workbench for almost-toric truncated-wedge geometry."""

__version__ = "0.1.0"

from .exactmath import DomainError  # noqa: F401
from .wedge import WedgeParams, validate  # noqa: F401
