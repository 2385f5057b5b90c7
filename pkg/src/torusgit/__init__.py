"""Exact combinatorics of torus GIT quotients: chambers, flipped polytopes,
volume polynomials, apolarity and the flip decomposition."""

__version__ = "0.1.0"
