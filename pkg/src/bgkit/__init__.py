"""Balanced presentations of the trivial group, bistellar moves and filling length."""
__version__ = "0.1.0"
