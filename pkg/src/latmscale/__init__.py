"""Discrete multiscale reduction of the lattice potential KdV equation."""

__version__ = "0.1.0"
