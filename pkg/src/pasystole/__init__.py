"""Minimum dilatations of pseudo-Anosov maps with orientable foliations."""

__version__ = "0.1.0"
