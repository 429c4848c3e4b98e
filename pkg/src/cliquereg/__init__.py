"""Exact regularity and certified upper bounds for clique complexes of graphs.

The regularity computed throughout is the Castelnuovo-Mumford regularity of
the ideal generated by the non-edges of a simple graph, read off the reduced
homology of induced-subgraph clique complexes.  Everything is exact integer
arithmetic; randomness only enters through explicitly seeded generators.
"""

from .graph import Graph

__all__ = ["Graph"]
__version__ = "0.1.0"
