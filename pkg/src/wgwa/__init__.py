"""Simple weight modules over rank-one weak generalized Weyl algebras."""

__version__ = "0.1.0"
