"""Constructions of the Infinite Loch Ness Monster surface, flat and hyperbolic."""

__version__ = "0.1.0"
