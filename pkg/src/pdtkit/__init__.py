"""Tools for PDT-style morphological and multi-layer annotation."""

__version__ = "0.1.0"
