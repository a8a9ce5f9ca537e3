"""Exact and modular verification of Franel-number identities and congruences."""

__version__ = "0.1.0"
