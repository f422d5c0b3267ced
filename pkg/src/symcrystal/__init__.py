"""Exact computations with the symmetric crystal and global basis of V_theta(0) for gl_infinity."""

__version__ = "0.1.0"
