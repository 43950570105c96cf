"""Subspace designs over finite fields: construction, Kramer-Mesner search, verification."""

from ._backend import BACKEND

__version__ = "0.1.0"
