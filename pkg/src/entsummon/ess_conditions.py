"""Pair access structures and the conditions that decide their realizability
as entanglement sharing schemes with an unknown partner.

Only structures without unauthorized pairs are modelled.  Checkers return
``None`` when a condition holds and a witness object when it fails.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional

from .causal_model import CausalGraph, bits, edge_sets
from .graph_core import (
    UndirectedGraph,
    component_coloring,
    find_even_simple_path,
    find_odd_cycle,
    shortest_path,
    simple_paths,
)

if TYPE_CHECKING:
    from .access_pair import AccessPairGraph


class InvalidAccessStructure(ValueError):
    pass


@dataclass(frozen=True)
class AccessStructure:
    names: tuple[str, ...]
    systems: tuple[frozenset, ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        if len(self.names) != len(self.systems):
            raise ValueError("one subsystem set per vertex required")
        n = len(self.names)
        norm = set()
        for u, v in self.edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"bad authorized pair ({u}, {v})")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @property
    def graph(self) -> UndirectedGraph:
        g = self.__dict__.get("_graph")
        if g is None:
            g = UndirectedGraph(len(self.names), self.edges)
            self.__dict__["_graph"] = g
        return g


@dataclass(frozen=True)
class MonogamyViolation:
    path: tuple[int, ...]

    @property
    def endpoints(self) -> tuple[int, int]:
        return self.path[0], self.path[-1]


@dataclass(frozen=True)
class M1Violation:
    callee: int
    withheld: int
    path: tuple[int, ...]  # odd path in the access graph, wing first


@dataclass(frozen=True)
class M2Violation:
    source: int
    first: int
    second: int


@dataclass(frozen=True)
class M3Violation:
    first_body: int
    second_body: int
    first_target: int
    second_target: int
    path: tuple[int, ...]  # even path between the two bodies


def check_validity(a: AccessStructure) -> tuple[bool, Optional[tuple[int, int]]]:
    for u, v in sorted(a.edges):
        if a.systems[u] & a.systems[v]:
            return False, (u, v)
    return True, None


def _require_valid(a: AccessStructure) -> None:
    ok, bad = check_validity(a)
    if not ok:
        u, v = bad
        raise InvalidAccessStructure(
            f"authorized pair {{{a.names[u]}, {a.names[v]}}} shares subsystems"
        )


def check_monogamy(a: AccessStructure) -> Optional[MonogamyViolation]:
    """Find an even-length path whose endpoint sets are disjoint.

    With an odd cycle present, dropping its closing edge leaves an even path
    whose endpoints are an authorized, hence disjoint, pair.  Otherwise the
    graph is bipartite and even paths join exactly the same-colour vertices
    of a component.
    """
    _require_valid(a)
    g = a.graph
    cycle = find_odd_cycle(g)
    if cycle is not None:
        return MonogamyViolation(cycle)
    color, comp = component_coloring(g)
    best = None
    for u in range(g.vertex_count):
        for v in range(u + 1, g.vertex_count):
            if comp[u] != comp[v] or color[u] != color[v]:
                continue
            if a.systems[u] & a.systems[v]:
                continue
            path = shortest_path(g, u, v)
            if best is None or len(path) < len(best):
                best = path
    return None if best is None else MonogamyViolation(best)


def monogamy_violations_bruteforce(a: AccessStructure) -> set[tuple[int, int]]:
    """Endpoint pairs ``u < v`` joined by some even simple path with disjoint
    subsystem sets, found by enumerating every simple path."""
    g = a.graph
    out = set()
    for u in range(g.vertex_count):
        for v in range(u + 1, g.vertex_count):
            if a.systems[u] & a.systems[v]:
                continue
            if any(len(p) % 2 == 1 for p in simple_paths(g, u, v)):
                out.add((u, v))
    return out


def check_no_odd_cycles(a: AccessStructure) -> Optional[tuple[int, ...]]:
    return find_odd_cycle(a.graph)


def realizable_unknown_partner(a: AccessStructure) -> tuple[bool, Optional[MonogamyViolation]]:
    violation = check_monogamy(a)
    return violation is None, violation


# Conditions on access-pair graphs built from causal graphs.

def check_M1(apg: "AccessPairGraph") -> Optional[M1Violation]:
    """Odd path from a wing ``T_{i\\k}`` to its own body ``T_i``.

    The wing is a leaf on ``T_k``, so this is an even path ``T_k ... T_i``.
    """
    g = apg.graph
    for w in apg.wings():
        key = apg.keys[w]
        path = find_even_simple_path(g, key.withheld, key.callee)
        if path is not None:
            return M1Violation(key.callee, key.withheld, (w,) + path)
    return None


def check_M2(g: CausalGraph, apg: "AccessPairGraph") -> Optional[M2Violation]:
    for i in range(g.n):
        outs = sorted(edge_sets(g, i).out_set)
        for x, j1 in enumerate(outs):
            for j2 in outs[x + 1:]:
                if (j1, j2) in apg.edges:
                    return M2Violation(i, j1, j2)
    return None


def check_M3(g: CausalGraph, apg: "AccessPairGraph") -> Optional[M3Violation]:
    """Even path (length zero allowed) between bodies ``T_i1``, ``T_i2`` while
    exclusive targets ``j1`` of ``i1`` and ``j2`` of ``i2`` form an
    authorized body pair.  The self fallback is not an exclusive target."""
    ag = apg.graph
    for i1 in range(g.n):
        t1 = [j for j in bits(g.out_mask[i1])]
        if not t1:
            continue
        for i2 in range(i1, g.n):
            t2 = [j for j in bits(g.out_mask[i2]) if j != i1]
            targets1 = [j for j in t1 if j != i2]
            if not t2 or not targets1:
                continue
            hit = next(((j1, j2) for j1 in targets1 for j2 in t2
                        if (min(j1, j2), max(j1, j2)) in apg.edges), None)
            if hit is None:
                continue
            path = (i1,) if i1 == i2 else find_even_simple_path(ag, i1, i2)
            if path is not None:
                return M3Violation(i1, i2, hit[0], hit[1], path)
    return None
