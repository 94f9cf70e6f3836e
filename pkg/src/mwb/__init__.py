"""Exact-arithmetic mutation workbench for cluster algebras from Weyl group elements."""

__version__ = "0.1.0"
