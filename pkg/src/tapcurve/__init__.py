"""Exact twisted Alexander polynomial and character variety toolkit."""

__version__ = "0.1.0"
