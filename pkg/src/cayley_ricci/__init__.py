"""Exact Lin-Lu-Yau Ricci curvature on Cayley graphs of finite groups."""

__version__ = "0.1.0"
