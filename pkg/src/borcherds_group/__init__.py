"""Exact truncated groups for Borcherds-type Lie algebras."""

__version__ = "0.1.0"
