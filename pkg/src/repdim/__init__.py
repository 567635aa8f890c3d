"""Exact certificates for representation dimension at most three via radical embeddings."""

__version__ = "0.1.0"
