"""Certified reproduction of an explicit upper bound on Diophantine quintuples."""

__version__ = "0.1.0"
