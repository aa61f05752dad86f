"""Exact toolkit for marked virtually free groups acting on fields."""

__version__ = "0.1.0"
