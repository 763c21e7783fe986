"""Feasibility of unknown-partner entanglement summoning on causal graphs."""

from .access_pair import AccessPairGraph, System, VertexKey, build_access_pair_graph
from .causal_conditions import Tag, Verdict, verdict, verdict_tag
from .causal_model import CausalGraph, GraphError, Relation

__all__ = [
    "AccessPairGraph", "CausalGraph", "GraphError", "Relation", "System", "Tag",
    "Verdict", "VertexKey", "build_access_pair_graph", "verdict", "verdict_tag",
]
