"""Generating series of convex polyominoes by symmetry class."""

__version__ = "0.1.0"
