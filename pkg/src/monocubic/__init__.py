"""Monogenity of pure cubic fields over Q and over F_q(t)."""

__version__ = "0.1.0"
