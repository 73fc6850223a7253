"""reorient: arc reversals, partial orientations and deorientations.

A mixed multigraph model, cut and connectivity oracles, exact desk-scale
solvers for the associated augmentation problems, gadget builders with
bidirectional solution lifting, and the polynomial-time algorithms the
exact solvers certify.
"""

from .core import Arc, Edge, GraphError, MixedGraph, PartialOrientation, SizeCapError
from .exact import ArcStrong, Requirement, SatInstance, Strong
from .result import SolveResult

__all__ = [
    "Arc",
    "ArcStrong",
    "Edge",
    "GraphError",
    "MixedGraph",
    "PartialOrientation",
    "Requirement",
    "SatInstance",
    "SizeCapError",
    "SolveResult",
    "Strong",
]
