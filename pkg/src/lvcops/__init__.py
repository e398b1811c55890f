"""Exact solving, scripted strategies, and verification for
limited-visibility pursuit games on finite simple graphs."""

__version__ = "0.1.0"
