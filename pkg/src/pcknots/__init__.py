"""Crossing signs and comultiplication-type invariants of pseudo-classical knots
in the thickening of a non-orientable surface."""

__version__ = "0.1.0"
