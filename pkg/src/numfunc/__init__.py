"""Exact arithmetic for the analogy between numbers and functions."""

__version__ = "0.1.0"
