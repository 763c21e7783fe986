"""Label-level simulation of the one-round sharing protocol.

Each diamond ``i`` initially holds the shares ``System(i, j)`` for every
``j`` in its out set (self fallback included) and every bidirected
neighbour.  On ``b_i = 0`` it forwards each share to its target; on
``b_i = 1`` it keeps everything and collects whatever arrives.  Calls to two
bidirected neighbours are answered from a dedicated Bell pair instead.

The required authorized pairs are derived here from the call semantics
alone, so they can be compared against the access-pair graph construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .access_pair import System, VertexKey
from .causal_model import CausalGraph, GraphError, Relation, edge_sets

SHARED_STATE = "shared-state"
DEDICATED_BELL_PAIR = "dedicated-bell-pair"


@dataclass(frozen=True)
class Step:
    vertex: int
    action: str  # "keep", "send" or "discard"
    system: System
    to: int


@dataclass(frozen=True)
class SimulationOutcome:
    calls: tuple[int, int]
    mode: str
    delivered: dict[int, frozenset[System]]
    trace: tuple[Step, ...]
    discarded: frozenset[System]


def call_pattern(n: int, called: Sequence[int]) -> tuple[int, ...]:
    bits = [0] * n
    for v in called:
        if not 0 <= v < n:
            raise GraphError(f"called vertex {v + 1} out of range")
        bits[v] = 1
    if sum(bits) != 2:
        raise GraphError("exactly two distinct vertices must be called")
    return tuple(bits)


def initial_shares(g: CausalGraph, i: int) -> list[System]:
    es = edge_sets(g, i)
    return [System(i, j) for j in sorted(es.out_set | es.bi_set)]


def simulate(g: CausalGraph, pattern: Sequence[int]) -> SimulationOutcome:
    """Run one round for a 0/1 call vector with exactly two bits set."""
    pattern = tuple(pattern)
    if len(pattern) != g.n or not set(pattern) <= {0, 1} or sum(pattern) != 2:
        raise GraphError("call pattern must be a 0/1 vector of length n with exactly two ones")
    a, b = (v for v in range(g.n) if pattern[v])
    if g.state(a, b) is Relation.BIDIRECTED:
        return SimulationOutcome((a, b), DEDICATED_BELL_PAIR,
                                 {a: frozenset(), b: frozenset()}, (), frozenset())
    received: dict[int, set[System]] = {v: set() for v in range(g.n)}
    trace = []
    discarded = set()
    for i in range(g.n):
        for share in initial_shares(g, i):
            if pattern[i]:
                trace.append(Step(i, "keep", share, i))
                received[i].add(share)
            elif share.dst == i:
                # uncalled self share: no output here, so it is dropped
                trace.append(Step(i, "discard", share, i))
                discarded.add(share)
            else:
                trace.append(Step(i, "send", share, share.dst))
                received[share.dst].add(share)
    for v in range(g.n):
        if not pattern[v]:
            discarded |= received[v]
    delivered = {a: frozenset(received[a]), b: frozenset(received[b])}
    return SimulationOutcome((a, b), SHARED_STATE, delivered, tuple(trace), frozenset(discarded))


def _vertex_name(g: CausalGraph, v: int, other: int) -> VertexKey:
    # a called vertex misses exactly the share of a called exclusive in-neighbour
    if g.state(other, v) is Relation.FORWARD:
        return VertexKey(v, other)
    return VertexKey(v)


def required_authorized_pairs(g: CausalGraph) -> dict[frozenset[VertexKey], dict[VertexKey, frozenset[System]]]:
    """Every pair of delivered share sets the protocol must turn into a Bell
    pair, keyed by the access-pair vertex names they instantiate."""
    out = {}
    for a, b in combinations(range(g.n), 2):
        res = simulate(g, call_pattern(g.n, (a, b)))
        if res.mode != SHARED_STATE:
            continue
        ka, kb = _vertex_name(g, a, b), _vertex_name(g, b, a)
        out[frozenset((ka, kb))] = {ka: res.delivered[a], kb: res.delivered[b]}
    return out
