"""Exact integral geometry of the quaternionic plane under Sp(2)Sp(1)."""

__version__ = "0.1.0"
