"""Feasibility conditions stated directly on the causal graph, and the
verdict engine that combines them.

Quasi-clique partition questions are answered through the undirected
complement: two diamonds are *together* (same side in every two-quasi-clique
partition) iff they share a component and a colour of its two-colouring.
When no partition exists at all, "together in every partition" holds
vacuously for every pair.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Union

from .causal_model import CausalGraph, GraphError, Relation, bits
from .graph_core import (
    component_coloring,
    find_even_simple_path,
    find_odd_cycle,
    is_quasi_clique,
    is_tournament,
    undirected_complement,
)


class Tag(enum.Enum):
    FEASIBLE = "feasible"
    INFEASIBLE = "infeasible"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class PartitionWitness:
    first: frozenset[int]
    second: frozenset[int]


@dataclass(frozen=True)
class OddCycle:
    """Odd cycle of the undirected complement: consecutive diamonds are
    disconnected in the causal graph."""

    cycle: tuple[int, ...]


@dataclass(frozen=True)
class TwoOut:
    source: int
    first: int
    second: int


@dataclass(frozen=True)
class TournamentGap:
    target: int
    first: int
    second: int


@dataclass(frozen=True)
class TournamentCover:
    """Per target diamond, the set of diamonds that do not point to it."""

    sets: tuple[frozenset[int], ...]


@dataclass(frozen=True)
class ConditionTable:
    passed: dict[str, bool]
    witnesses: dict[str, object] = field(default_factory=dict)


Witness = Union[PartitionWitness, OddCycle, TwoOut, TournamentGap, TournamentCover, ConditionTable]


@dataclass(frozen=True)
class Verdict:
    tag: Tag
    reason: str
    witness: Witness


class _Split:
    """Partition structure of a causal graph via its complement colouring."""

    __slots__ = ("g", "color", "comp")

    def __init__(self, g: CausalGraph):
        self.g = g
        cc = component_coloring(undirected_complement(g))
        self.color, self.comp = cc if cc is not None else (None, None)

    @property
    def exists(self) -> bool:
        return self.color is not None

    def together(self, i: int, j: int) -> bool:
        if i == j or self.color is None:
            return True
        return self.comp[i] == self.comp[j] and self.color[i] == self.color[j]

    def canonical(self) -> PartitionWitness:
        k1 = frozenset(v for v in range(self.g.n) if self.color[v] == 0)
        return PartitionWitness(k1, frozenset(range(self.g.n)) - k1)


def check_NOC_star(g: CausalGraph, _split: Optional[_Split] = None) -> Optional[PartitionWitness]:
    """A two-quasi-clique partition if one exists."""
    s = _split or _Split(g)
    return s.canonical() if s.exists else None


def check_M1_star(g: CausalGraph, _split: Optional[_Split] = None) -> Optional[tuple[int, int]]:
    """First exclusive edge ``i -> j`` that no partition separates."""
    s = _split or _Split(g)
    for i in range(g.n):
        for j in bits(g.out_mask[i]):
            if s.together(i, j):
                return i, j
    return None


def check_M2_star(g: CausalGraph) -> Optional[TwoOut]:
    """A diamond with exclusive edges to two mutually disconnected diamonds."""
    adj = g.adj_mask
    for i in range(g.n):
        outs = bits(g.out_mask[i])
        for x, j in enumerate(outs):
            for k in outs[x + 1:]:
                if not adj[j] >> k & 1:
                    return TwoOut(i, j, k)
    return None


def check_M3_star(g: CausalGraph, _split: Optional[_Split] = None) -> Optional[tuple[int, int, int, int]]:
    s = _split or _Split(g)
    adj = g.adj_mask
    out = g.out_mask
    for i1 in range(g.n):
        if not out[i1]:
            continue
        for i2 in range(i1, g.n):
            if not out[i2] or not s.together(i1, i2):
                continue
            for j1 in bits(out[i1] & ~(1 << i2)):
                for j2 in bits(out[i2] & ~(1 << i1)):
                    if j1 != j2 and not adj[j1] >> j2 & 1:
                        return i1, i2, j1, j2
    return None


@dataclass(frozen=True)
class DoubleStarReport:
    m1: Optional[tuple[int, int]]
    m3: Optional[tuple[int, int, int, int]]

    @property
    def passed(self) -> bool:
        return self.m1 is None and self.m3 is None


def check_double_star(g: CausalGraph) -> DoubleStarReport:
    """The two-condition form using "not pointed to by" instead of exclusive
    edges; the pair ``(i, j)`` qualifies whenever ``j`` does not point to ``i``."""
    s = _Split(g)
    n = g.n
    to = [g.out_mask[v] | g.bi_mask[v] for v in range(n)]
    full = (1 << n) - 1
    # free[i]: diamonds j != i with j not pointing to i
    free = [full & ~(1 << i) & ~sum(1 << j for j in range(n) if to[j] >> i & 1) for i in range(n)]
    m1 = None
    for i in range(n):
        for j in bits(free[i]):
            if s.together(i, j):
                m1 = (i, j)
                break
        if m1:
            break
    m3 = None
    adj = g.adj_mask
    for i1 in range(n):
        for i2 in range(i1, n):
            if not s.together(i1, i2):
                continue
            for j1 in bits(free[i1]):
                for j2 in bits(free[i2]):
                    if j1 != j2 and not adj[j1] >> j2 & 1:
                        m3 = (i1, i2, j1, j2)
                        break
                if m3:
                    break
            if m3:
                break
        if m3:
            break
    return DoubleStarReport(m1, m3)


# Intermediate complement-path forms, stated with simple paths.

def check_M1_prime(g: CausalGraph) -> Optional[tuple[int, int]]:
    """Exclusive edge ``k -> i`` with an even simple path from ``k`` to ``i``
    in the undirected complement."""
    comp = undirected_complement(g)
    for k in range(g.n):
        for i in bits(g.out_mask[k]):
            if find_even_simple_path(comp, k, i) is not None:
                return k, i
    return None


def check_M3_prime(g: CausalGraph) -> Optional[tuple[int, int, int, int]]:
    comp = undirected_complement(g)
    adj = g.adj_mask
    out = g.out_mask
    for i1 in range(g.n):
        for i2 in range(i1, g.n):
            pairs = [(j1, j2) for j1 in bits(out[i1]) for j2 in bits(out[i2])
                     if j1 != j2 and not adj[j1] >> j2 & 1]
            if not pairs:
                continue
            if i1 == i2 or find_even_simple_path(comp, i1, i2) is not None:
                return (i1, i2) + pairs[0]
    return None


def star_conditions(g: CausalGraph) -> ConditionTable:
    s = _Split(g)
    noc = check_NOC_star(g, s)
    m1 = check_M1_star(g, s)
    m2 = check_M2_star(g)
    m3 = check_M3_star(g, s)
    passed = {"NOC*": noc is not None, "M1*": m1 is None, "M2*": m2 is None, "M3*": m3 is None}
    witnesses = {}
    if noc is not None:
        witnesses["NOC*"] = noc
    else:
        witnesses["NOC*"] = OddCycle(find_odd_cycle(undirected_complement(g)))
    for name, w in (("M1*", m1), ("M2*", m2), ("M3*", m3)):
        if w is not None:
            witnesses[name] = w
    return ConditionTable(passed, witnesses)


def check_bidirected_theorem(g: CausalGraph) -> Verdict:
    if not g.is_all_bidirected:
        raise GraphError("bidirected characterization needs a graph without one-way edges")
    cycle = find_odd_cycle(undirected_complement(g))
    if cycle is not None:
        return Verdict(Tag.INFEASIBLE, "bidirected-theorem", OddCycle(cycle))
    return Verdict(Tag.FEASIBLE, "bidirected-theorem", check_NOC_star(g))


def _not_pointing_to(g: CausalGraph, j: int) -> frozenset[int]:
    return frozenset(i for i in range(g.n) if i != j and not g.points_to(i, j))


def check_oriented_theorem(g: CausalGraph) -> Verdict:
    if not g.is_oriented:
        raise GraphError("oriented characterization needs a graph without bidirected edges")
    sets = []
    adj = g.adj_mask
    for j in range(g.n):
        s = sorted(_not_pointing_to(g, j))
        for x, a in enumerate(s):
            for b in s[x + 1:]:
                if not adj[a] >> b & 1:
                    return Verdict(Tag.INFEASIBLE, "oriented-tournament", TournamentGap(j, a, b))
        sets.append(frozenset(s))
    return Verdict(Tag.FEASIBLE, "oriented-tournament", TournamentCover(tuple(sets)))


def verdict(g: CausalGraph) -> Verdict:
    """Decide the task, preferring the complete characterizations.

    Infeasible verdicts on oriented graphs are re-expressed through the
    universally necessary conditions when one of them fails, since those
    witnesses are simpler to check.
    """
    if g.is_all_bidirected:
        return check_bidirected_theorem(g)
    if g.is_oriented:
        v = check_oriented_theorem(g)
        if v.tag is Tag.INFEASIBLE:
            return _necessity(g) or v
        return v
    nec = _necessity(g)
    if nec is not None:
        return nec
    table = star_conditions(g)
    if all(table.passed.values()):
        return Verdict(Tag.FEASIBLE, "main-sufficiency", table)
    return Verdict(Tag.UNKNOWN, "open", table)


def _necessity(g: CausalGraph) -> Optional[Verdict]:
    cycle = find_odd_cycle(undirected_complement(g))
    if cycle is not None:
        return Verdict(Tag.INFEASIBLE, "NOC*-necessity", OddCycle(cycle))
    two_out = check_M2_star(g)
    if two_out is not None:
        return Verdict(Tag.INFEASIBLE, "M2*-necessity", two_out)
    return None


def verdict_tag(g: CausalGraph) -> Tag:
    """Tag of :func:`verdict` without building witnesses."""
    s = _Split(g)
    if g.is_all_bidirected:
        return Tag.FEASIBLE if s.exists else Tag.INFEASIBLE
    if g.is_oriented:
        adj = g.adj_mask
        to = [g.out_mask[v] for v in range(g.n)]
        for j in range(g.n):
            members = [i for i in range(g.n) if i != j and not to[i] >> j & 1]
            mask = sum(1 << i for i in members)
            for a in members:
                if (mask & ~adj[a] & ~(1 << a)):
                    return Tag.INFEASIBLE
        return Tag.FEASIBLE
    if not s.exists or check_M2_star(g) is not None:
        return Tag.INFEASIBLE
    if check_M1_star(g, s) is None and check_M3_star(g, s) is None:
        return Tag.FEASIBLE
    return Tag.UNKNOWN


# Independent witness verification

def _disconnected(g: CausalGraph, a: int, b: int) -> bool:
    return g.state(a, b) is Relation.NONE


def verify_verdict(g: CausalGraph, v: Verdict) -> bool:
    """Check a verdict's witness from first principles."""
    w = v.witness
    if isinstance(w, PartitionWitness):
        return (v.tag is Tag.FEASIBLE and not (w.first & w.second)
                and w.first | w.second == frozenset(range(g.n))
                and is_quasi_clique(g, w.first) and is_quasi_clique(g, w.second))
    if isinstance(w, OddCycle):
        c = w.cycle
        return (v.tag is Tag.INFEASIBLE and len(c) % 2 == 1 and len(set(c)) == len(c)
                and all(_disconnected(g, c[k], c[(k + 1) % len(c)]) for k in range(len(c))))
    if isinstance(w, TwoOut):
        return (v.tag is Tag.INFEASIBLE
                and g.state(w.source, w.first) is Relation.FORWARD
                and g.state(w.source, w.second) is Relation.FORWARD
                and _disconnected(g, w.first, w.second))
    if isinstance(w, TournamentGap):
        t, a, b = w.target, w.first, w.second
        return (v.tag is Tag.INFEASIBLE and g.is_oriented and len({t, a, b}) == 3
                and not g.points_to(a, t) and not g.points_to(b, t)
                and not is_tournament(g, (a, b)))
    if isinstance(w, TournamentCover):
        return (v.tag is Tag.FEASIBLE and g.is_oriented and len(w.sets) == g.n
                and all(s == _not_pointing_to(g, j) and is_tournament(g, s)
                        for j, s in enumerate(w.sets)))
    if isinstance(w, ConditionTable):
        if g.is_all_bidirected or g.is_oriented:
            return False
        if v.tag is Tag.FEASIBLE:
            return check_double_star(g).passed
        if v.tag is Tag.UNKNOWN:
            ds = check_double_star(g)
            return (check_NOC_star(g) is not None and check_M2_star(g) is None
                    and not ds.passed)
    return False

