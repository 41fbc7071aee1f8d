"""Parametric squeezing of a field mode and the radiation of an atom in the squeezed field."""

__version__ = "0.1.0"
