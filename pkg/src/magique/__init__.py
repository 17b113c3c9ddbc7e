"""Exact stabilizer-entropy laboratory for small frustrated spin chains."""

__version__ = "0.1.0"
