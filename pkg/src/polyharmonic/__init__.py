"""Numerical toolkit for starlikeness and convexity of polyharmonic maps of the unit disk."""
from .core import PolyharmonicMap, TailProfile, WirtingerBundle, evaluate, jacobian, wirtinger

__all__ = ["PolyharmonicMap", "TailProfile", "WirtingerBundle", "evaluate", "jacobian", "wirtinger"]
__version__ = "0.1.0"
