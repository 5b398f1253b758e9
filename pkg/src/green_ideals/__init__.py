"""Primitive idempotents and ideals of Green biset functors on small finite groups."""

__version__ = "0.1.0"
