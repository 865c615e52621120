# src/__init__.py
"""Photocell simulator - N-donor quantum photocell as an open quantum system."""

__version__ = "1.0.0"
