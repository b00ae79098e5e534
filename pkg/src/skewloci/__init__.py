"""Exact linear algebra and arithmetic geometry of skew-form degeneracy loci."""

__version__ = "0.1.0"
