"""Exact verification and classification of GN-structures and Kundt structures."""

__version__ = "0.1.0"
