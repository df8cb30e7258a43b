"""Exact symbolic checks of the Segal-Sugawara construction on truncated vacuum modules."""

__version__ = "0.1.0"
