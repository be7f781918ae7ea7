"""Exact tensor calculus for contact metric and bi-Legendrian structures."""
__version__ = "0.1.0"
