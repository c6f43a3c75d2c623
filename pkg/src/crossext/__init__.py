"""Matched pairs, bicrossed products, crossed actions and fusion rings at desk scale."""

__version__ = "0.1.0"
