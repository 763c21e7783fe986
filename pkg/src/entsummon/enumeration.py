"""Exhaustive and sampled causal-graph enumeration, lemma cross-checks and
verdict censuses.

Graphs are indexed by their pair-state vector read as a number whose most
significant digit is the first pair ``(0, 1)``; the enumeration order is
lexicographic in that vector and any index range can be run on its own.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import islice, product
from typing import Callable, Iterable, Iterator, Optional, Sequence

import numpy as np

from .access_pair import build_access_pair_graph
from .causal_conditions import (
    Tag,
    check_double_star,
    check_M1_prime,
    check_M1_star,
    check_M2_star,
    check_M3_prime,
    check_M3_star,
    check_NOC_star,
    check_oriented_theorem,
    verdict,
    verdict_tag,
    verify_verdict,
)
from .causal_model import (
    CausalGraph,
    Relation,
    SpacetimeScenario,
    causal_graph_from_spacetime,
    pair_count,
)
from .ess_conditions import (
    check_M1,
    check_M2,
    check_M3,
    check_monogamy,
    check_no_odd_cycles,
    monogamy_violations_bruteforce,
)
from .graph_core import component_coloring
from .protocol_sim import required_authorized_pairs

ALPHABETS = {
    "all": (0, 1, 2, 3),
    "mixed": (0, 1, 2, 3),
    "oriented": (0, 1, 2),
    "bidirected": (0, 3),
}
EXHAUSTIVE_LIMIT = {"all": 5, "mixed": 5, "oriented": 5, "bidirected": 6}
DEFAULT_SEED = 20240601


class SizeGuardError(ValueError):
    pass


@dataclass(frozen=True)
class GraphClass:
    tag: str
    n: int

    def __post_init__(self):
        if self.tag not in ALPHABETS:
            raise ValueError(f"unknown graph class {self.tag!r}")
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")

    @property
    def space_size(self) -> int:
        return len(ALPHABETS[self.tag]) ** pair_count(self.n)

    def admits(self, states: Sequence[int]) -> bool:
        if self.tag != "mixed":
            return True
        return any(s in (1, 2) for s in states) and 3 in states

    def __str__(self):
        return f"{self.tag}/n={self.n}"


def shard_range(size: int, shard: Optional[tuple[int, int]]) -> tuple[int, int]:
    if shard is None:
        return 0, size
    k, m = shard
    if not (m >= 1 and 0 <= k < m):
        raise ValueError(f"bad shard {k}/{m}")
    return size * k // m, size * (k + 1) // m


def enumerate_graphs(cls: GraphClass, start: int = 0, stop: Optional[int] = None) -> Iterator[tuple[int, CausalGraph]]:
    """Yield ``(index, graph)`` over the index range, skipping indices whose
    state vector is outside the class."""
    if cls.n > EXHAUSTIVE_LIMIT[cls.tag]:
        raise SizeGuardError(
            f"exhaustive {cls.tag} enumeration limited to n <= {EXHAUSTIVE_LIMIT[cls.tag]}"
        )
    size = cls.space_size
    stop = size if stop is None else min(stop, size)
    alphabet = ALPHABETS[cls.tag]
    vectors = product(alphabet, repeat=pair_count(cls.n))
    for index, states in enumerate(islice(vectors, start, stop), start):
        if cls.admits(states):
            yield index, CausalGraph(cls.n, states)


def graph_index(cls: GraphClass, g: CausalGraph) -> int:
    alphabet = ALPHABETS[cls.tag]
    index = 0
    for s in g.states:
        index = index * len(alphabet) + alphabet.index(s)
    return index


def sample_graphs(cls: GraphClass, count: int, seed: int = DEFAULT_SEED) -> Iterator[tuple[int, CausalGraph]]:
    """Seeded uniform sample (with replacement) from the class."""
    rng = random.Random(seed)
    alphabet = ALPHABETS[cls.tag]
    p = pair_count(cls.n)
    produced = 0
    while produced < count:
        states = tuple(rng.choice(alphabet) for _ in range(p))
        if not cls.admits(states):
            continue
        produced += 1
        g = CausalGraph(cls.n, states)
        yield graph_index(cls, g), g


# Lemma catalogue.  Each check returns True (holds), False (counterexample)
# or None (instance outside the statement's scope).

class Instance:
    def __init__(self, g: CausalGraph):
        self.g = g

    @cached_property
    def apg(self):
        return build_access_pair_graph(self.g)

    @cached_property
    def noc(self) -> bool:
        return check_no_odd_cycles(self.apg) is None

    @cached_property
    def m1(self) -> bool:
        return check_M1(self.apg) is None

    @cached_property
    def m2(self) -> bool:
        return check_M2(self.g, self.apg) is None

    @cached_property
    def m3(self) -> bool:
        return check_M3(self.g, self.apg) is None

    @cached_property
    def monogamy(self) -> bool:
        return check_monogamy(self.apg) is None

    @cached_property
    def stars(self) -> dict[str, bool]:
        g = self.g
        return {
            "NOC*": check_NOC_star(g) is not None,
            "M1*": check_M1_star(g) is None,
            "M2*": check_M2_star(g) is None,
            "M3*": check_M3_star(g) is None,
        }


def _noc_star(x: Instance):
    return x.stars["NOC*"] == x.noc


def _m2_star(x: Instance):
    return x.stars["M2*"] == x.m2


def _m1_prime(x: Instance):
    return x.m1 == (check_M1_prime(x.g) is None)


def _m1_star(x: Instance):
    # without a partition every pair counts as together, so M1* fails
    # vacuously; the equivalence is stated under NOC
    return (x.stars["NOC*"] and x.stars["M1*"]) == (x.noc and x.m1)


def _m3_prime(x: Instance):
    return x.m3 == (check_M3_prime(x.g) is None)


def _m3_star(x: Instance):
    # holds unconditionally up to n = 4 but not at n = 5; stated under NOC
    return (x.stars["NOC*"] and x.stars["M3*"]) == (x.noc and x.m3)


def _m2_in_m3(x: Instance):
    return (not x.stars["M3*"] or x.stars["M2*"]) and (not x.m3 or x.m2)


def _double_star(x: Instance):
    return check_double_star(x.g).passed == all(x.stars.values())


def _oriented_implies_stars(x: Instance):
    if not x.g.is_oriented:
        return None
    if check_oriented_theorem(x.g).tag is not Tag.FEASIBLE:
        return True
    return all(x.stars.values())


def _stars_imply_tournament(x: Instance):
    if not x.g.is_oriented:
        return None
    return not all(x.stars.values()) or check_oriented_theorem(x.g).tag is Tag.FEASIBLE


def _monogamy_gives_noc(x: Instance):
    return not x.monogamy or x.noc


def _bidirected_noc_monogamy(x: Instance):
    if not x.g.is_all_bidirected:
        return None
    return x.noc == x.monogamy


def _sufficient_access_pair(x: Instance):
    return not (x.noc and x.m1 and x.m2 and x.m3) or x.monogamy


def _protocol_algorithm(x: Instance):
    required = required_authorized_pairs(x.g)
    apg = x.apg
    built = {}
    for u, v in apg.edges:
        ku, kv = apg.keys[u], apg.keys[v]
        built[frozenset((ku, kv))] = {ku: apg.systems[u], kv: apg.systems[v]}
    return required == built


def _overlap(x: Instance):
    g, apg = x.g, x.apg
    return all(bool(apg.systems[i] & apg.systems[j]) == g.adjacent(i, j)
               for i in range(g.n) for j in range(i + 1, g.n))


def _monogamy_oracle(x: Instance):
    return monogamy_agrees_with_bruteforce(x.apg)


def _verdict_witness(x: Instance):
    v = verdict(x.g)
    return verify_verdict(x.g, v) and verdict_tag(x.g) is v.tag


def _monotone(x: Instance):
    g = x.g
    if verdict_tag(g) is not Tag.FEASIBLE:
        return True
    for i, j, s in g.pairs():
        if s in (Relation.FORWARD, Relation.BACKWARD):
            if verdict_tag(g.with_state(i, j, Relation.BIDIRECTED)) is Tag.INFEASIBLE:
                return False
    return True


def monogamy_violations_shortcut(a) -> Optional[set[tuple[int, int]]]:
    """Violating endpoint pairs by the bipartite parity shortcut, or ``None``
    when the graph has an odd cycle and the shortcut does not apply."""
    cc = component_coloring(a.graph)
    if cc is None:
        return None
    color, comp = cc
    n = a.graph.vertex_count
    return {(u, v) for u in range(n) for v in range(u + 1, n)
            if comp[u] == comp[v] and color[u] == color[v]
            and not a.systems[u] & a.systems[v]}


def monogamy_agrees_with_bruteforce(a) -> bool:
    """check_monogamy against exhaustive simple-path search: same verdict,
    a checkable witness, and on bipartite graphs the same violating pairs."""
    brute = monogamy_violations_bruteforce(a)
    found = check_monogamy(a)
    if (found is None) != (not brute):
        return False
    if found is not None:
        path = found.path
        u, v = found.endpoints
        if len(set(path)) != len(path) or len(path) % 2 == 0:
            return False
        if any(not a.graph.has_edge(p, q) for p, q in zip(path, path[1:])):
            return False
        if a.systems[u] & a.systems[v]:
            return False
    shortcut = monogamy_violations_shortcut(a)
    return shortcut is None or shortcut == brute


LEMMAS: dict[str, Callable[[Instance], Optional[bool]]] = {
    "noc-star": _noc_star,
    "m2-star": _m2_star,
    "m1-prime": _m1_prime,
    "m1-star": _m1_star,
    "m3-prime": _m3_prime,
    "m3-star": _m3_star,
    "m2-within-m3": _m2_in_m3,
    "double-star": _double_star,
    "oriented-implies-stars": _oriented_implies_stars,
    "stars-imply-tournament": _stars_imply_tournament,
    "monogamy-implies-noc": _monogamy_gives_noc,
    "bidirected-noc-monogamy": _bidirected_noc_monogamy,
    "sufficient-access-pair": _sufficient_access_pair,
    "protocol-algorithm": _protocol_algorithm,
    "overlap": _overlap,
    "monogamy-oracle": _monogamy_oracle,
    "verdict-witness": _verdict_witness,
    "verdict-monotone": _monotone,
}

EQUIVALENCE_LEMMAS = ("noc-star", "m2-star", "m1-prime", "m1-star", "m3-prime", "m3-star",
                      "m2-within-m3", "double-star", "monogamy-implies-noc",
                      "bidirected-noc-monogamy")


@dataclass
class LemmaCount:
    checked: int = 0
    agreed: int = 0
    failed: int = 0
    first_counterexample: Optional[int] = None

    def merge(self, other: "LemmaCount") -> "LemmaCount":
        firsts = [i for i in (self.first_counterexample, other.first_counterexample) if i is not None]
        return LemmaCount(self.checked + other.checked, self.agreed + other.agreed,
                          self.failed + other.failed, min(firsts) if firsts else None)


@dataclass
class CrossCheckReport:
    cls: GraphClass
    mode: str
    instances: int = 0
    counts: dict[str, LemmaCount] = field(default_factory=dict)

    @property
    def disagreements(self) -> int:
        return sum(c.failed for c in self.counts.values())

    def merge(self, other: "CrossCheckReport") -> "CrossCheckReport":
        names = list(dict.fromkeys(list(self.counts) + list(other.counts)))
        counts = {k: self.counts.get(k, LemmaCount()).merge(other.counts.get(k, LemmaCount()))
                  for k in names}
        return CrossCheckReport(self.cls, self.mode, self.instances + other.instances, counts)


def resolve_lemmas(names: Optional[Iterable[str]]) -> list[str]:
    if names is None:
        return list(EQUIVALENCE_LEMMAS)
    names = list(names)
    if names == ["all"]:
        return list(LEMMAS)
    unknown = [n for n in names if n not in LEMMAS]
    if unknown:
        raise ValueError(f"unknown lemma(s): {', '.join(unknown)}")
    return names


def cross_check(cls: GraphClass, lemmas: Optional[Iterable[str]] = None, *,
                shard: Optional[tuple[int, int]] = None,
                sample: Optional[int] = None, seed: int = DEFAULT_SEED) -> CrossCheckReport:
    """Evaluate every selected lemma on each graph of the class (or of a
    seeded sample) and count disagreements."""
    names = resolve_lemmas(lemmas)
    if sample is None:
        start, stop = shard_range(cls.space_size, shard)
        graphs = enumerate_graphs(cls, start, stop)
        mode = "exhaustive" if shard is None else f"shard {shard[0]}/{shard[1]}"
    else:
        graphs = sample_graphs(cls, sample, seed)
        mode = f"sample {sample} seed {seed}"
    report = CrossCheckReport(cls, mode, 0, {k: LemmaCount() for k in names})
    for index, g in graphs:
        report.instances += 1
        inst = Instance(g)
        for name in names:
            ok = LEMMAS[name](inst)
            if ok is None:
                continue
            c = report.counts[name]
            c.checked += 1
            if ok:
                c.agreed += 1
            else:
                c.failed += 1
                if c.first_counterexample is None:
                    c.first_counterexample = index
    return report


@dataclass
class Census:
    cls: GraphClass
    mode: str
    counts: dict[Tag, int]
    watched: dict[int, Optional[Tag]] = field(default_factory=dict)

    def merge(self, other: "Census") -> "Census":
        counts = {t: self.counts.get(t, 0) + other.counts.get(t, 0) for t in Tag}
        watched = dict(self.watched)
        for k, v in other.watched.items():
            watched[k] = watched.get(k) or v
        return Census(self.cls, self.mode, counts, watched)


def verdict_census(cls: GraphClass, *, shard: Optional[tuple[int, int]] = None,
                   watch: Sequence[CausalGraph] = ()) -> Census:
    """Tabulate verdict tags; ``watch`` graphs are reported with the tag they
    received if they fall inside the enumerated range."""
    start, stop = shard_range(cls.space_size, shard)
    watch_idx = {graph_index(cls, g): None for g in watch}
    counts = {t: 0 for t in Tag}
    for index, g in enumerate_graphs(cls, start, stop):
        tag = verdict_tag(g)
        counts[tag] += 1
        if index in watch_idx:
            watch_idx[index] = tag
    mode = "exhaustive" if shard is None else f"shard {shard[0]}/{shard[1]}"
    return Census(cls, mode, counts, watch_idx)


@dataclass(frozen=True)
class StrictnessProbe:
    oriented: int
    tournament_failures: int
    failures_marked_infeasible: int


def strictness_probe(n: int) -> StrictnessProbe:
    """Count oriented graphs failing the tournament condition and how many of
    them the verdict dispatch reports as Infeasible.  Informational only."""
    total = failed = marked = 0
    for _, g in enumerate_graphs(GraphClass("oriented", n)):
        total += 1
        if check_oriented_theorem(g).tag is Tag.INFEASIBLE:
            failed += 1
            marked += verdict_tag(g) is Tag.INFEASIBLE
    return StrictnessProbe(total, failed, marked)


# Spacetime sampling oracle

def random_scenario(rng: np.random.Generator, dimension: int, count: int) -> SpacetimeScenario:
    """Random diamonds in a box; about a fifth are pointlike."""
    pairs = []
    for _ in range(count):
        t = float(rng.uniform(0.0, 6.0))
        x = rng.uniform(-4.0, 4.0, size=dimension)
        if rng.random() < 0.2:
            tau, dx = 0.0, np.zeros(dimension)
        else:
            tau = float(rng.uniform(0.2, 4.0))
            direction = rng.normal(size=dimension)
            norm = np.linalg.norm(direction)
            dx = direction / norm * tau * float(rng.uniform(0.0, 0.9)) if norm > 0 else direction
        c = (t, tuple(float(v) for v in x))
        r = (t + tau, tuple(float(v) for v in x + dx))
        pairs.append((c, r))
    return SpacetimeScenario(dimension, tuple(pairs))


def diamond_points(c, r, steps: int = 9) -> np.ndarray:
    """Grid sample of the closed diamond between ``c`` and ``r`` as an
    array of rows ``(t, x_1, ..., x_d)``, always including both tips."""
    t0, x0 = c[0], np.asarray(c[1], dtype=float)
    t1, x1 = r[0], np.asarray(r[1], dtype=float)
    d = len(x0)
    tips = np.array([[t0, *x0], [t1, *x1]])
    if t1 - t0 <= 0:
        return tips[:1]
    half = (t1 - t0) / 2
    centre = (x0 + x1) / 2
    axes = [np.linspace(t0, t1, steps)] + [np.linspace(centre[k] - half, centre[k] + half, steps)
                                          for k in range(d)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, d + 1)
    ts, xs = grid[:, 0], grid[:, 1:]
    inside = ((ts - t0) >= np.linalg.norm(xs - x0, axis=1) - 1e-12) & \
             ((t1 - ts) >= np.linalg.norm(x1 - xs, axis=1) - 1e-12)
    return np.vstack([tips, grid[inside]])


def sampled_reachability(s: SpacetimeScenario, steps: int = 9) -> set[tuple[int, int]]:
    """Ordered pairs ``(i, j)`` for which some sampled point of ``D_i``
    causally precedes some sampled point of ``D_j``."""
    pts = [diamond_points(c, r, steps) for c, r in s.pairs]
    out = set()
    for i, p in enumerate(pts):
        for j, q in enumerate(pts):
            if i == j:
                continue
            dt = q[None, :, 0] - p[:, None, 0]
            dist = np.linalg.norm(q[None, :, 1:] - p[:, None, 1:], axis=-1)
            if np.any((dt >= -1e-12) & (dt + 1e-12 >= dist)):
                out.add((i, j))
    return out


def spacetime_agreement(count: int = 200, seed: int = DEFAULT_SEED,
                        max_dimension: int = 2, max_diamonds: int = 5) -> tuple[int, list[int]]:
    """Compare the closed-form edge rule with grid sampling on random
    scenarios.  Returns ``(instances, indices of disagreeing instances)``."""
    rng = np.random.default_rng(seed)
    bad = []
    for k in range(count):
        d = int(rng.integers(1, max_dimension + 1))
        m = int(rng.integers(2, max_diamonds + 1))
        s = random_scenario(rng, d, m)
        g = causal_graph_from_spacetime(s)
        edges = {(i, j) for i in range(m) for j in range(m) if i != j and g.points_to(i, j)}
        if edges != sampled_reachability(s):
            bad.append(k)
    return count, bad
