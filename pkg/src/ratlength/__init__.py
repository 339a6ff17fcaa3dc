"""Boundary length of bounded univalent rational functions on the unit disk."""
