"""Document formats, DOT export and report rendering.

Graph documents::

    # comment
    vertices 4
    2 -> 3
    1 <-> 2

Scenario documents::

    minkowski d=1
    call 0 0 return 2 0

Vertex indices in documents are 1-based.
"""

from __future__ import annotations

from typing import Optional

from .access_pair import AccessPairGraph
from .causal_conditions import (
    ConditionTable,
    OddCycle,
    PartitionWitness,
    TournamentCover,
    TournamentGap,
    TwoOut,
    Verdict,
)
from .causal_model import CausalGraph, GraphError, Relation, SpacetimeScenario
from .enumeration import Census, CrossCheckReport
from .protocol_sim import SimulationOutcome


class ParseError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield lineno, line


def _parse_int(lineno: int, token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(lineno, f"{what} must be an integer, got {token!r}") from None


def parse_graph(text: str) -> CausalGraph:
    lines = _content_lines(text)
    header = next(lines, None)
    if header is None:
        raise ParseError(1, "missing 'vertices N' header")
    lineno, line = header
    parts = line.split()
    if len(parts) != 2 or parts[0] != "vertices":
        raise ParseError(lineno, "expected 'vertices N' header")
    n = _parse_int(lineno, parts[1], "vertex count")
    if n < 0:
        raise ParseError(lineno, "vertex count must be nonnegative")
    g = CausalGraph.empty(n)
    declared: dict[frozenset[int], int] = {}
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 3 or parts[1] not in ("->", "<->"):
            raise ParseError(lineno, "expected 'i -> j' or 'i <-> j'")
        i = _parse_int(lineno, parts[0], "vertex")
        j = _parse_int(lineno, parts[2], "vertex")
        for v in (i, j):
            if not 1 <= v <= n:
                raise ParseError(lineno, f"vertex {v} out of range 1..{n}")
        if i == j:
            raise ParseError(lineno, f"self-loop on vertex {i}")
        key = frozenset((i, j))
        if key in declared:
            raise ParseError(lineno, f"pair {min(i, j)},{max(i, j)} already declared on line {declared[key]}")
        declared[key] = lineno
        rel = Relation.BIDIRECTED if parts[1] == "<->" else Relation.FORWARD
        g = g.with_state(i - 1, j - 1, rel)
    return g


def serialize_graph(g: CausalGraph) -> str:
    out = [f"vertices {g.n}"]
    for i, j, s in g.pairs():
        if s is Relation.FORWARD:
            out.append(f"{i + 1} -> {j + 1}")
        elif s is Relation.BACKWARD:
            out.append(f"{j + 1} -> {i + 1}")
        elif s is Relation.BIDIRECTED:
            out.append(f"{i + 1} <-> {j + 1}")
    return "\n".join(out) + "\n"


def parse_scenario(text: str) -> SpacetimeScenario:
    lines = _content_lines(text)
    header = next(lines, None)
    if header is None:
        raise ParseError(1, "missing 'minkowski d=D' header")
    lineno, line = header
    parts = line.split()
    if len(parts) != 2 or parts[0] != "minkowski" or not parts[1].startswith("d="):
        raise ParseError(lineno, "expected 'minkowski d=D' header")
    d = _parse_int(lineno, parts[1][2:], "dimension")
    if d < 0:
        raise ParseError(lineno, "dimension must be nonnegative")
    pairs = []
    for lineno, line in lines:
        parts = line.split()
        width = d + 1
        if (len(parts) != 2 * width + 2 or parts[0] != "call" or parts[width + 1] != "return"):
            raise ParseError(lineno, f"expected 'call t{' x' * d} return t{' x' * d}'")
        try:
            nums = [float(x) for x in parts[1:width + 1] + parts[width + 2:]]
        except ValueError:
            raise ParseError(lineno, "coordinates must be numbers") from None
        c = (nums[0], tuple(nums[1:width]))
        r = (nums[width], tuple(nums[width + 1:]))
        pairs.append((c, r))
        try:
            SpacetimeScenario(d, ((c, r),))
        except GraphError as exc:
            raise ParseError(lineno, str(exc).split(": ", 1)[-1]) from None
    return SpacetimeScenario(d, tuple(pairs))


def serialize_scenario(s: SpacetimeScenario) -> str:
    out = [f"minkowski d={s.dimension}"]
    for c, r in s.pairs:
        cs = " ".join(repr(float(x)) for x in (c[0], *c[1]))
        rs = " ".join(repr(float(x)) for x in (r[0], *r[1]))
        out.append(f"call {cs} return {rs}")
    return "\n".join(out) + "\n"


# DOT

def _systems_label(systems) -> str:
    return ", ".join(str(y) for y in sorted(systems)) or "{}"


def export_dot(g: CausalGraph) -> str:
    out = ["digraph causal {"]
    out += [f"  D{v + 1};" for v in range(g.n)]
    for i, j, s in g.pairs():
        if s is Relation.FORWARD:
            out.append(f"  D{i + 1} -> D{j + 1};")
        elif s is Relation.BACKWARD:
            out.append(f"  D{j + 1} -> D{i + 1};")
        elif s is Relation.BIDIRECTED:
            out.append(f"  D{i + 1} -> D{j + 1} [dir=both];")
    out.append("}")
    return "\n".join(out) + "\n"


def export_access_dot(apg: AccessPairGraph) -> str:
    out = ["graph access {"]
    for v, (key, systems) in enumerate(zip(apg.keys, apg.systems)):
        shape = "box" if key.is_wing else "ellipse"
        label = f"{key}\\n{_systems_label(systems)}"
        out.append(f'  v{v} [label="{label}", shape={shape}];')
    for u, v in sorted(apg.edges):
        out.append(f"  v{u} -- v{v};")
    out.append("}")
    return "\n".join(out) + "\n"


# Reports

def _d(v: int) -> str:
    return f"D{v + 1}"


def _dset(vs) -> str:
    return "{" + ",".join(_d(v) for v in sorted(vs)) + "}"


def render_witness(w) -> list[str]:
    if isinstance(w, PartitionWitness):
        return [f"partition: {_dset(w.first)} | {_dset(w.second)}"]
    if isinstance(w, OddCycle):
        return ["odd cycle of disconnected diamonds: " + " - ".join(_d(v) for v in w.cycle)]
    if isinstance(w, TwoOut):
        return [f"two-out: {_d(w.source)} -> {_d(w.first)} and {_d(w.source)} -> {_d(w.second)}, "
                f"{_d(w.first)} and {_d(w.second)} disconnected"]
    if isinstance(w, TournamentGap):
        return [f"tournament gap at {_d(w.target)}: {_d(w.first)} and {_d(w.second)} "
                "do not point to it and are not joined by an edge"]
    if isinstance(w, TournamentCover):
        return [f"non-pointing set of {_d(t)}: {_dset(s)}" for t, s in enumerate(w.sets)]
    if isinstance(w, ConditionTable):
        lines = ["condition table:"]
        for name, ok in w.passed.items():
            detail = ""
            if name in w.witnesses and not ok:
                x = w.witnesses[name]
                detail = "  witness " + (",".join(str(v + 1) for v in x) if isinstance(x, tuple)
                                         else "; ".join(render_witness(x)))
            lines.append(f"  {name:<5} {'pass' if ok else 'FAIL'}{detail}")
        return lines
    return [repr(w)]


def render_verdict(v: Verdict, fmt: str = "text") -> str:
    if fmt == "record":
        witness = "; ".join(render_witness(v.witness))
        return f"verdict\t{v.tag.value}\t{v.reason}\t{witness}\n"
    return "\n".join([f"verdict: {v.tag.value}", f"reason: {v.reason}", *render_witness(v.witness)]) + "\n"


def render_access_graph(apg: AccessPairGraph, fmt: str = "text") -> str:
    if fmt == "record":
        out = [f"vertex\t{k}\t{'wing' if k.is_wing else 'body'}\t{_systems_label(s)}"
               for k, s in zip(apg.keys, apg.systems)]
        out += [f"edge\t{apg.keys[u]}\t{apg.keys[v]}" for u, v in sorted(apg.edges)]
        return "\n".join(out) + "\n"
    out = [f"access-pair graph: {len(apg.keys)} vertices, {len(apg.edges)} edges"]
    out += [f"  {str(k):<8} {{{_systems_label(s)}}}" for k, s in zip(apg.keys, apg.systems)]
    out += [f"  {apg.keys[u]} -- {apg.keys[v]}" for u, v in sorted(apg.edges)]
    return "\n".join(out) + "\n"


def render_simulation(res: SimulationOutcome, fmt: str = "text") -> str:
    a, b = res.calls
    if fmt == "record":
        out = [f"mode\t{res.mode}"]
        out += [f"step\t{_d(s.vertex)}\t{s.action}\t{s.system}\t{_d(s.to)}" for s in res.trace]
        out += [f"delivered\t{_d(v)}\t{_systems_label(res.delivered[v])}" for v in (a, b)]
        return "\n".join(out) + "\n"
    out = [f"calls: {_d(a)}, {_d(b)}", f"mode: {res.mode}"]
    for s in res.trace:
        target = "" if s.action != "send" else f" to {_d(s.to)}"
        out.append(f"  {_d(s.vertex)} {s.action} {s.system}{target}")
    for v in (a, b):
        out.append(f"delivered at {_d(v)}: {{{_systems_label(res.delivered[v])}}}")
    if res.discarded:
        out.append(f"discarded: {{{_systems_label(res.discarded)}}}")
    return "\n".join(out) + "\n"


def render_cross_check(r: CrossCheckReport, fmt: str = "text") -> str:
    if fmt == "record":
        return "".join(f"{name}\t{r.cls.tag}\t{r.cls.n}\t{c.checked}\t{c.failed}\n"
                       for name, c in r.counts.items())
    out = [f"cross-check {r.cls} ({r.mode}): {r.instances} graphs"]
    for name, c in r.counts.items():
        line = f"  {name:<26} checked {c.checked:>8}  failed {c.failed}"
        if c.first_counterexample is not None:
            line += f"  first counterexample at index {c.first_counterexample}"
        out.append(line)
    return "\n".join(out) + "\n"


def render_census(c: Census, fmt: str = "text", names: Optional[dict[int, str]] = None) -> str:
    names = names or {}
    counts = [(t.value, k) for t, k in c.counts.items()]
    if fmt == "record":
        out = [f"census\t{c.cls.tag}\t{c.cls.n}\t{t}\t{k}" for t, k in counts]
        out += [f"watch\t{names.get(i, i)}\t{i}\t{tag.value if tag else 'absent'}"
                for i, tag in c.watched.items()]
        return "\n".join(out) + "\n"
    out = [f"census {c.cls} ({c.mode})"]
    out += [f"  {t:<11} {k}" for t, k in counts]
    out += [f"  watched {names.get(i, i)} (index {i}): {tag.value if tag else 'outside range'}"
            for i, tag in c.watched.items()]
    return "\n".join(out) + "\n"
