"""Exact stabbing sets of projective polytopes via Chow-form sign vectors."""

__version__ = "0.1.0"
