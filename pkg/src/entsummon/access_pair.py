"""Access-pair graph of a causal graph, with explicit subsystem labels.

A label ``System(i, j)`` names the share that diamond ``i`` forwards to
diamond ``j`` when it is not called; ``System(i, i)`` is the self share a
diamond holds when it has no exclusive out-neighbour.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .causal_model import CausalGraph, GraphError, bits, edge_sets
from .ess_conditions import AccessStructure


class System(NamedTuple):
    src: int
    dst: int

    def __str__(self):
        return f"Y^{{{self.src + 1}->{self.dst + 1}}}"


class VertexKey(NamedTuple):
    """``T_callee`` when ``withheld`` is None, else the wing ``T_{callee\\withheld}``."""

    callee: int
    withheld: Optional[int] = None

    @property
    def is_wing(self) -> bool:
        return self.withheld is not None

    def __str__(self):
        if self.withheld is None:
            return f"T{self.callee + 1}"
        return f"T{self.callee + 1}\\{self.withheld + 1}"


def body_set(g: CausalGraph, i: int) -> frozenset[System]:
    """Shares present at a called diamond when no neighbour is called."""
    es = edge_sets(g, i)
    incoming = {System(k, i) for k in es.in_set | es.bi_set}
    outgoing = {System(i, l) for l in es.out_set | es.bi_set}
    return frozenset(incoming | outgoing)


def wing_set(g: CausalGraph, i: int, j: int) -> frozenset[System]:
    """Shares at called diamond ``i`` when its exclusive in-neighbour ``j``
    is called too."""
    if not (g.in_mask[i] >> j & 1):
        raise GraphError(f"no exclusive edge {j + 1} -> {i + 1}; wing T{i + 1}\\{j + 1} undefined")
    return body_set(g, i) - {System(j, i)}


@dataclass(frozen=True)
class AccessPairGraph(AccessStructure):
    keys: tuple[VertexKey, ...] = ()
    causal: Optional[CausalGraph] = None

    @property
    def body_count(self) -> int:
        return self.causal.n

    def index(self, key: VertexKey) -> int:
        return self._index[key]

    @property
    def _index(self) -> dict[VertexKey, int]:
        idx = self.__dict__.get("_index_cache")
        if idx is None:
            idx = {k: v for v, k in enumerate(self.keys)}
            self.__dict__["_index_cache"] = idx
        return idx

    def wings(self) -> list[int]:
        return [v for v, k in enumerate(self.keys) if k.is_wing]

    def labelled_edges(self) -> set[frozenset[VertexKey]]:
        return {frozenset((self.keys[u], self.keys[v])) for u, v in self.edges}


def build_access_pair_graph(g: CausalGraph) -> AccessPairGraph:
    """Body vertex per diamond, body-body edge per disconnected pair, and a
    wing ``T_{j\\i}`` hanging off ``T_i`` for every exclusive edge ``i -> j``."""
    n = g.n
    keys = [VertexKey(i) for i in range(n)]
    systems = [body_set(g, i) for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if not g.adj_mask[i] >> j & 1:
                edges.append((i, j))
    wings = sorted((j, i) for i in range(n) for j in bits(g.out_mask[i]))
    for callee, sender in wings:
        w = len(keys)
        keys.append(VertexKey(callee, sender))
        systems.append(wing_set(g, callee, sender))
        edges.append((sender, w))
    return AccessPairGraph(
        names=tuple(str(k) for k in keys),
        systems=tuple(systems),
        edges=frozenset(edges),
        keys=tuple(keys),
        causal=g,
    )
