"""Exact tools for semiantichains and unichain coverings in products of posets."""

__version__ = "0.1.0"
