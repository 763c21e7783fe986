"""Undirected-graph primitives and direction-aware clique notions.

Graphs are small (the enumeration work never exceeds a few dozen vertices),
so adjacency is kept as one integer bitmask per vertex.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Optional

from .causal_model import CausalGraph, bits

BRUTEFORCE_LIMIT = 16


class InputTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class UndirectedGraph:
    vertex_count: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
            norm.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(norm))

    @classmethod
    def from_masks(cls, masks: Iterable[int]) -> "UndirectedGraph":
        masks = tuple(masks)
        edges = frozenset((u, v) for u, m in enumerate(masks) for v in bits(m) if u < v)
        g = cls(len(masks), edges)
        g.__dict__["adj"] = masks
        return g

    @cached_property
    def adj(self) -> tuple[int, ...]:
        masks = [0] * self.vertex_count
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def neighbors(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(bits(m)) for m in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def complement(self) -> "UndirectedGraph":
        full = (1 << self.vertex_count) - 1
        return UndirectedGraph.from_masks(full & ~(m | 1 << u) for u, m in enumerate(self.adj))


def undirected_complement(g: CausalGraph) -> UndirectedGraph:
    """Edge ``{u, v}`` iff the causal pair is disconnected."""
    full = (1 << g.n) - 1
    return UndirectedGraph.from_masks(full & ~(m | 1 << u) for u, m in enumerate(g.adj_mask))


def skeleton(g: CausalGraph) -> UndirectedGraph:
    """Undirected graph with an edge wherever the causal pair is related."""
    return UndirectedGraph.from_masks(g.adj_mask)


def component_coloring(g: UndirectedGraph) -> Optional[tuple[tuple[int, ...], tuple[int, ...]]]:
    """BFS two-colouring together with component ids, or ``None`` if an odd
    cycle exists.  Each component's lowest vertex gets colour 0."""
    n = g.vertex_count
    adj = g.adj
    color = [-1] * n
    comp = [-1] * n
    c = 0
    for s in range(n):
        if color[s] >= 0:
            continue
        color[s] = 0
        comp[s] = c
        queue = [s]
        for u in queue:
            cu = color[u]
            m = adj[u]
            while m:
                low = m & -m
                v = low.bit_length() - 1
                m ^= low
                if color[v] < 0:
                    color[v] = cu ^ 1
                    comp[v] = c
                    queue.append(v)
                elif color[v] == cu:
                    return None
        c += 1
    return tuple(color), tuple(comp)


def two_coloring(g: UndirectedGraph) -> Optional[tuple[int, ...]]:
    res = component_coloring(g)
    return None if res is None else res[0]


def components(g: UndirectedGraph) -> tuple[int, ...]:
    n = g.vertex_count
    comp = [-1] * n
    c = 0
    for s in range(n):
        if comp[s] >= 0:
            continue
        comp[s] = c
        stack = [s]
        while stack:
            u = stack.pop()
            for v in g.neighbors[u]:
                if comp[v] < 0:
                    comp[v] = c
                    stack.append(v)
        c += 1
    return tuple(comp)


def _bfs_dist(g: UndirectedGraph, s: int, allowed: int) -> list[int]:
    dist = [-1] * g.vertex_count
    dist[s] = 0
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v in g.neighbors[u]:
            if allowed >> v & 1 and dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def shortest_odd_cycle_length(g: UndirectedGraph) -> Optional[int]:
    full = (1 << g.vertex_count) - 1
    best = None
    for s in range(g.vertex_count):
        dist = _bfs_dist(g, s, full)
        for u, v in g.edges:
            if dist[u] >= 0 and dist[u] == dist[v]:
                length = 2 * dist[u] + 1
                if best is None or length < best:
                    best = length
    return best


def find_odd_cycle(g: UndirectedGraph) -> Optional[tuple[int, ...]]:
    """One shortest odd cycle ``(v_0, ..., v_{k-1})``; the closing edge is
    ``{v_{k-1}, v_0}``.  Among shortest cycles the one starting at the lowest
    vertex, then lexicographically smallest, is returned."""
    length = shortest_odd_cycle_length(g)
    if length is None:
        return None
    n = g.vertex_count
    for s in range(n):
        allowed = ((1 << n) - 1) & ~((1 << s) - 1)
        dist = _bfs_dist(g, s, allowed)
        path = [s]

        def extend(u: int, used: int) -> bool:
            steps = len(path)
            if steps == length:
                return g.has_edge(u, s)
            for v in g.neighbors[u]:
                if v <= s or used >> v & 1:
                    continue
                if dist[v] < 0 or dist[v] > length - steps:
                    continue
                path.append(v)
                if extend(v, used | 1 << v):
                    return True
                path.pop()
            return False

        if extend(s, 1 << s):
            return tuple(path)
    raise AssertionError("odd cycle length found but no cycle recovered")


def even_walk_reachable(g: UndirectedGraph, u: int, v: int) -> bool:
    """Walk of even positive length from ``u`` to ``v``, by BFS over
    ``(vertex, parity)`` states."""
    seen = {(u, 0)}
    queue = deque([(u, 0)])
    while queue:
        x, p = queue.popleft()
        for y in g.neighbors[x]:
            state = (y, p ^ 1)
            if state[1] == 0 and y == v:
                return True
            if state not in seen:
                seen.add(state)
                queue.append(state)
    return False


def simple_paths(g: UndirectedGraph, u: int, v: int, max_length: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """All paths from ``u`` to ``v`` of positive length whose interior vertices
    are pairwise distinct and differ from both endpoints.

    For ``u == v`` this admits cycles through ``u`` and the degenerate
    out-and-back path ``u, x, u``.
    """
    path = [u]

    def walk(x: int, used: int):
        if max_length is not None and len(path) > max_length:
            return
        for y in g.neighbors[x]:
            if y == v:
                yield tuple(path) + (y,)
            elif not used >> y & 1:
                path.append(y)
                yield from walk(y, used | 1 << y)
                path.pop()

    yield from walk(u, 1 << u | 1 << v)


def _guard(g: UndirectedGraph) -> None:
    if g.vertex_count > BRUTEFORCE_LIMIT:
        raise InputTooLarge(
            f"exhaustive path search limited to {BRUTEFORCE_LIMIT} vertices, got {g.vertex_count}"
        )


def even_simple_path_exists_bruteforce(g: UndirectedGraph, u: int, v: int) -> bool:
    _guard(g)
    return any(len(p) % 2 == 1 for p in simple_paths(g, u, v))


def find_even_simple_path(g: UndirectedGraph, u: int, v: int) -> Optional[tuple[int, ...]]:
    """Shortest even-length simple path from ``u`` to ``v`` (``u != v``).

    Bipartite graphs use BFS; otherwise an exhaustive search by increasing
    length, subject to the size guard.
    """
    if u == v:
        raise ValueError("endpoints must differ")
    cc = component_coloring(g)
    if cc is not None:
        color, comp = cc
        if comp[u] != comp[v] or color[u] != color[v]:
            return None
        return shortest_path(g, u, v)
    _guard(g)
    for limit in range(2, g.vertex_count, 2):
        for p in simple_paths(g, u, v, max_length=limit):
            if len(p) - 1 == limit:
                return p
    return None


def shortest_path(g: UndirectedGraph, u: int, v: int) -> Optional[tuple[int, ...]]:
    prev = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in g.neighbors[x]:
            if y not in prev:
                prev[y] = x
                queue.append(y)
    if v not in prev:
        return None
    out = [v]
    while prev[out[-1]] is not None:
        out.append(prev[out[-1]])
    return tuple(reversed(out))


def bipartite_even_path(color, comp, adj, u: int, v: int) -> bool:
    """Even simple path test valid only on bipartite graphs."""
    if u == v:
        return adj[u] != 0
    return comp[u] == comp[v] and color[u] == color[v]


# Direction-aware notions on causal graphs

def is_quasi_clique(g: CausalGraph, s: Iterable[int]) -> bool:
    members = sorted(set(s))
    adj = g.adj_mask
    return all(adj[a] >> b & 1 for i, a in enumerate(members) for b in members[i + 1:])


def is_tournament(g: CausalGraph, s: Iterable[int]) -> bool:
    """Every distinct pair joined by exactly one one-way edge."""
    members = sorted(set(s))
    for i, a in enumerate(members):
        for b in members[i + 1:]:
            if g.state(a, b) not in (1, 2):
                return False
    return True


Partition = tuple[frozenset[int], frozenset[int]]


def two_quasi_clique_partitions(g: CausalGraph) -> list[Partition]:
    """All ordered partitions ``(K1, K2)`` into two quasi-cliques.

    Each connected component of the undirected complement contributes its
    two colour-class assignments; an empty side is allowed.  The first entry
    is the canonical partition that puts every component's lowest vertex in
    ``K1``.
    """
    cc = component_coloring(undirected_complement(g))
    if cc is None:
        return []
    color, comp = cc
    ncomp = max(comp) + 1 if comp else 0
    out = []
    for flips in product((0, 1), repeat=ncomp):
        k1 = frozenset(v for v in range(g.n) if color[v] ^ flips[comp[v]] == 0)
        out.append((k1, frozenset(range(g.n)) - k1))
    return out
