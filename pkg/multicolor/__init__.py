"""Multigraph edge colouring: density certificates, Tashkinov-tree augmentation and M(n,m) experiments."""

__version__ = "1.0.0"
