"""Exact q-series algebra of brackets and bi-brackets, their double
shuffle structure, and multiple Eisenstein series."""

__version__ = "0.1.0"
