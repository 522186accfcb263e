"""Sandpile groups of trinities, hypertrees and the Bernardi and rotor-routing actions."""

from .errors import TrinityError
from .plane_structures import (
    BasePair,
    PlaneGraph,
    RibbonDigraph,
    Trinity,
    build_trinity_from_balanced_digraph,
    build_trinity_from_bipartite,
    build_trinity_from_plane_graph,
)
from .sandpile_core import ChipConfig, PicClass, canonical_rep, group_descriptor
from .trinity_group import digraph_of, graph_of, phi, psi
from .actions import bernardi_act, rotor_act, sandpile_act

__all__ = [
    "BasePair",
    "ChipConfig",
    "PicClass",
    "PlaneGraph",
    "RibbonDigraph",
    "Trinity",
    "TrinityError",
    "bernardi_act",
    "build_trinity_from_balanced_digraph",
    "build_trinity_from_bipartite",
    "build_trinity_from_plane_graph",
    "canonical_rep",
    "digraph_of",
    "graph_of",
    "group_descriptor",
    "phi",
    "psi",
    "rotor_act",
    "sandpile_act",
]
