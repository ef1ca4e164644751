"""Verification library for gcd-sum weighted averages."""

__version__ = "0.1.0"
