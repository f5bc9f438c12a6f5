"""Finite constructions and exhaustive checks for 2-categories, their nerves and subdivision."""

__version__ = "0.1.0"
