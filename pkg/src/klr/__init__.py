"""Exact workbench for KLR algebras, their standard modules and integral forms."""

__version__ = "0.1.0"
