"""Combinatorial and geometric machinery for counting mapping-class-group
orbits of closed curves with bounded self-intersection on hyperbolic
surfaces."""

__version__ = "0.1.0"
