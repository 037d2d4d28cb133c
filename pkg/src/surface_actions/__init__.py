"""Combinatorial realizations of cyclic surface actions and their symplectic images."""

__version__ = "0.1.0"
