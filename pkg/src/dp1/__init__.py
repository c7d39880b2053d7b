"""Exact-arithmetic toolkit for degree-1 del Pezzo surfaces over finite fields."""

__version__ = "0.1.0"
