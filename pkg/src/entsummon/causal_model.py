"""Causal graphs over causal diamonds and their construction from Minkowski data.

Vertices are 0-based internally.  Every unordered pair ``{i, j}`` carries one
of four states; for the canonical orientation ``i < j``:

* ``NONE``       -- neither diamond can signal the other,
* ``FORWARD``    -- ``i -> j`` only,
* ``BACKWARD``   -- ``j -> i`` only,
* ``BIDIRECTED`` -- both directions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable


class Relation(enum.IntEnum):
    NONE = 0
    FORWARD = 1
    BACKWARD = 2
    BIDIRECTED = 3


class Link(enum.Enum):
    """Relation of an ordered pair ``(i, j)`` as seen from ``i``."""

    EXCLUSIVE_TO = "exclusive_to"
    EXCLUSIVE_FROM = "exclusive_from"
    BIDIRECTED = "bidirected"
    DISCONNECTED = "disconnected"

    def mirror(self) -> "Link":
        if self is Link.EXCLUSIVE_TO:
            return Link.EXCLUSIVE_FROM
        if self is Link.EXCLUSIVE_FROM:
            return Link.EXCLUSIVE_TO
        return self


class GraphError(ValueError):
    pass


def pair_index(n: int, i: int, j: int) -> int:
    """Position of the pair ``{i, j}`` (``i < j``) in lexicographic pair order."""
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def pair_count(n: int) -> int:
    return n * (n - 1) // 2


@dataclass(frozen=True)
class CausalGraph:
    n: int
    states: tuple[int, ...]

    def __post_init__(self):
        if self.n < 0:
            raise GraphError("vertex count must be nonnegative")
        if len(self.states) != pair_count(self.n):
            raise GraphError(
                f"expected {pair_count(self.n)} pair states, got {len(self.states)}"
            )
        for s in self.states:
            if s not in (0, 1, 2, 3):
                raise GraphError(f"invalid pair state {s!r}")

    @classmethod
    def empty(cls, n: int) -> "CausalGraph":
        return cls(n, (0,) * pair_count(n))

    @classmethod
    def from_arrows(cls, n: int, arrows: Iterable[tuple[int, int]],
                    bidirected: Iterable[tuple[int, int]] = ()) -> "CausalGraph":
        """Build from directed arrows ``i -> j``; opposite arrows merge into a
        bidirected pair.  Indices are 0-based."""
        states = [0] * pair_count(n)
        for i, j in arrows:
            _check_pair(n, i, j)
            k = pair_index(n, min(i, j), max(i, j))
            states[k] |= 1 if i < j else 2
        for i, j in bidirected:
            _check_pair(n, i, j)
            states[pair_index(n, min(i, j), max(i, j))] = 3
        return cls(n, tuple(states))

    def state(self, i: int, j: int) -> Relation:
        """Stored state of the pair, oriented from ``i`` to ``j``."""
        _check_pair(self.n, i, j)
        s = self.states[pair_index(self.n, min(i, j), max(i, j))]
        if i > j and s in (1, 2):
            s = 3 - s
        return Relation(s)

    def points_to(self, i: int, j: int) -> bool:
        """``D_i -> D_j`` (exclusive or bidirected)."""
        return bool(self._to[i] >> j & 1)

    def adjacent(self, i: int, j: int) -> bool:
        return bool(self._adj[i] >> j & 1)

    def with_state(self, i: int, j: int, rel: Relation) -> "CausalGraph":
        """Copy with the pair ``{i, j}`` set to ``rel`` oriented from ``i``."""
        _check_pair(self.n, i, j)
        s = int(rel)
        if i > j and s in (1, 2):
            s = 3 - s
        states = list(self.states)
        states[pair_index(self.n, min(i, j), max(i, j))] = s
        return CausalGraph(self.n, tuple(states))

    def pairs(self):
        """Yield ``(i, j, state)`` for every pair ``i < j``."""
        k = 0
        for i in range(self.n):
            for j in range(i + 1, self.n):
                yield i, j, Relation(self.states[k])
                k += 1

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def is_all_bidirected(self) -> bool:
        """No one-way pairs (the edgeless graph qualifies)."""
        return all(s in (0, 3) for s in self.states)

    @property
    def is_oriented(self) -> bool:
        """No bidirected pairs (the edgeless graph qualifies)."""
        return all(s != 3 for s in self.states)

    # Bitmask views, bit k of mask[i] refers to vertex k.

    @cached_property
    def _masks(self):
        n = self.n
        out_excl = [0] * n
        in_excl = [0] * n
        bi = [0] * n
        k = 0
        for i in range(n):
            for j in range(i + 1, n):
                s = self.states[k]
                k += 1
                if s == 1:
                    out_excl[i] |= 1 << j
                    in_excl[j] |= 1 << i
                elif s == 2:
                    out_excl[j] |= 1 << i
                    in_excl[i] |= 1 << j
                elif s == 3:
                    bi[i] |= 1 << j
                    bi[j] |= 1 << i
        return tuple(out_excl), tuple(in_excl), tuple(bi)

    @property
    def out_mask(self) -> tuple[int, ...]:
        """Exclusive out-neighbours, without the self fallback."""
        return self._masks[0]

    @property
    def in_mask(self) -> tuple[int, ...]:
        return self._masks[1]

    @property
    def bi_mask(self) -> tuple[int, ...]:
        return self._masks[2]

    @cached_property
    def _adj(self) -> tuple[int, ...]:
        o, i, b = self._masks
        return tuple(o[v] | i[v] | b[v] for v in range(self.n))

    @cached_property
    def _to(self) -> tuple[int, ...]:
        o, _, b = self._masks
        return tuple(o[v] | b[v] for v in range(self.n))

    @property
    def adj_mask(self) -> tuple[int, ...]:
        return self._adj


def _check_pair(n: int, i: int, j: int) -> None:
    if i == j:
        raise GraphError(f"self-relation on vertex {i}")
    if not (0 <= i < n and 0 <= j < n):
        raise GraphError(f"vertex out of range in pair ({i}, {j}) for n={n}")


def bits(mask: int) -> list[int]:
    out = []
    k = 0
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return out


def relation_of(g: CausalGraph, i: int, j: int) -> Link:
    s = g.state(i, j)
    if s is Relation.FORWARD:
        return Link.EXCLUSIVE_TO
    if s is Relation.BACKWARD:
        return Link.EXCLUSIVE_FROM
    if s is Relation.BIDIRECTED:
        return Link.BIDIRECTED
    return Link.DISCONNECTED


@dataclass(frozen=True)
class EdgeSets:
    out_set: frozenset[int]
    in_set: frozenset[int]
    bi_set: frozenset[int]


def edge_sets(g: CausalGraph, i: int) -> EdgeSets:
    """Out/in/bidirected index sets of vertex ``i``.

    The out set falls back to ``{i}`` whenever ``i`` has no exclusive
    out-neighbour, bidirected neighbours notwithstanding.
    """
    if not 0 <= i < g.n:
        raise GraphError(f"vertex {i} out of range")
    out = bits(g.out_mask[i]) or [i]
    return EdgeSets(frozenset(out), frozenset(bits(g.in_mask[i])),
                    frozenset(bits(g.bi_mask[i])))


# Minkowski ingestion

Point = tuple[float, tuple[float, ...]]


@dataclass(frozen=True)
class SpacetimeScenario:
    dimension: int
    pairs: tuple[tuple[Point, Point], ...]

    def __post_init__(self):
        if self.dimension < 0:
            raise GraphError("spatial dimension must be nonnegative")
        for k, (c, r) in enumerate(self.pairs):
            for p in (c, r):
                if len(p[1]) != self.dimension:
                    raise GraphError(
                        f"pair {k + 1}: expected {self.dimension} spatial coordinates"
                    )
            if not causally_precedes(c, r):
                raise GraphError(f"pair {k + 1}: empty diamond, call is not in the "
                                 "causal past of its return point")


CAUSAL_ATOL = 1e-12


def causally_precedes(p: Point, q: Point, atol: float = CAUSAL_ATOL) -> bool:
    """Closed causal order with unit light speed: lightlike separation counts."""
    dt = q[0] - p[0]
    return dt >= -atol and dt + atol >= math.dist(p[1], q[1])


def causal_graph_from_spacetime(s: SpacetimeScenario) -> CausalGraph:
    """Edge ``i -> j`` iff the call of ``i`` causally precedes the return of ``j``."""
    n = len(s.pairs)
    arrows = [(i, j) for i in range(n) for j in range(n)
              if i != j and causally_precedes(s.pairs[i][0], s.pairs[j][1])]
    return CausalGraph.from_arrows(n, arrows)

