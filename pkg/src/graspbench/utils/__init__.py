"""Utility functions module."""

from .validators import ArrayValidator, ParameterValidator

__all__ = ["ArrayValidator", "ParameterValidator"]
