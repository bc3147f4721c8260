"""Diskcyclicity analysis for weighted shifts and scalar operators."""

__version__ = "0.1.0"
