import io
from itertools import product

import pytest
from hypothesis import given, strategies as st

from entsummon import gallery
from entsummon.access_pair import build_access_pair_graph
from entsummon.causal_conditions import verdict
from entsummon.causal_model import CausalGraph, SpacetimeScenario
from entsummon.cli import EXIT_FOR_TAG, main
from entsummon.io import (
    ParseError,
    export_access_dot,
    export_dot,
    parse_graph,
    parse_scenario,
    serialize_graph,
    serialize_scenario,
)

FIG2 = "vertices 3\n2 -> 3\n2 -> 1\n"
PENTAGON_CHORD = "# pentagon plus one-way chord\nvertices 5\n1 <-> 2\n2 <-> 3\n3 <-> 4\n4 <-> 5\n1 <-> 5\n4 -> 1\n"
SQUARE_PATH = "vertices 4\n1 <-> 2\n2 <-> 4\n3 <-> 4\n"


def test_parse_examples():
    assert parse_graph("vertices 3\n1 -> 2\n2 -> 3") == gallery.one_way_chain()
    assert parse_graph(SQUARE_PATH) == gallery.bidirected_square_path()
    assert parse_graph(PENTAGON_CHORD) == gallery.pentagon_with_one_way_chord()


@pytest.mark.parametrize("text,line,fragment", [
    ("vertices 2\n1 <-> 1", 2, "self-loop"),
    ("vertices 2\n1 -> 2\n2 -> 1", 3, "already declared"),
    ("vertices 2\n1 -> 2\n1 <-> 2", 3, "already declared"),
    ("vertices 2\n1 -> 3", 2, "out of range"),
    ("vertices 2\n1 => 2", 2, "expected"),
    ("vertex 2", 1, "header"),
    ("", 1, "header"),
    ("vertices x", 1, "integer"),
])
def test_parse_errors(text, line, fragment):
    with pytest.raises(ParseError) as exc:
        parse_graph(text)
    assert exc.value.lineno == line and fragment in str(exc.value)


def test_round_trip_exhaustive_4():
    for n in range(5):
        for states in product(range(4), repeat=n * (n - 1) // 2):
            g = CausalGraph(n, states)
            text = serialize_graph(g)
            assert parse_graph(text) == g
            assert serialize_graph(parse_graph(text)) == text


def test_serialize_is_canonical():
    messy = "# x\n\nvertices 4\n  3 <-> 4\n2 -> 1   \n4 -> 2\n"
    assert serialize_graph(parse_graph(messy)) == "vertices 4\n2 -> 1\n4 -> 2\n3 <-> 4\n"


@given(st.lists(st.tuples(st.floats(-5, 5), st.floats(-5, 5), st.floats(0, 3), st.floats(-1, 1)),
                max_size=5))
def test_scenario_round_trip(raw):
    pairs = tuple(((t, (x,)), (t + tau, (x + dx * tau,))) for t, x, tau, dx in raw)
    s = SpacetimeScenario(1, pairs)
    assert parse_scenario(serialize_scenario(s)) == s


def test_scenario_errors():
    with pytest.raises(ParseError, match="line 2"):
        parse_scenario("minkowski d=1\ncall 1 0 return 0 0\n")
    with pytest.raises(ParseError, match="line 2"):
        parse_scenario("minkowski d=2\ncall 0 0 return 1 0\n")
    with pytest.raises(ParseError, match="line 1"):
        parse_scenario("euclid d=1\n")


def test_dot_examples():
    one = export_dot(CausalGraph.from_arrows(2, [(0, 1)]))
    assert one.count("->") == 1 and "dir=both" not in one
    assert "dir=both" in export_dot(gallery.bidirected_square_path())
    edgeless = export_dot(CausalGraph.empty(3))
    assert "->" not in edgeless and edgeless.count("D") == 3
    apg = export_access_dot(build_access_pair_graph(gallery.one_way_square()))
    assert apg.count("shape=ellipse") == 4 and apg.count("shape=box") == 3
    assert apg.count(" -- ") == 6
    assert apg == export_access_dot(build_access_pair_graph(gallery.one_way_square()))


def run(argv, tmp_path=None, files=None):
    for name, text in (files or {}).items():
        (tmp_path / name).write_text(text)
    out = io.StringIO()
    code = main([a.replace("@", str(tmp_path) + "/") for a in argv], out=out)
    return code, out.getvalue()


def test_cli_check(tmp_path):
    code, out = run(["check", "@f.txt"], tmp_path, {"f.txt": FIG2})
    assert code == 1 and "M2*" in out and "two-out" in out
    code, out = run(["check", "@f.txt"], tmp_path, {"f.txt": PENTAGON_CHORD})
    assert code == 2 and "condition table" in out and "M1*   FAIL" in out
    code, out = run(["check", "--format", "record", "@f.txt"], tmp_path, {"f.txt": SQUARE_PATH})
    assert code == 0 and out.startswith("verdict\tfeasible\t")


def test_cli_exit_code_tracks_tag(tmp_path):
    for name in ("one_way_chain", "two_out", "bidirected_pentagon", "pentagon_with_one_way_chord"):
        g = getattr(gallery, name)()
        code, _ = run(["check", "@g.txt"], tmp_path, {"g.txt": serialize_graph(g)})
        assert code == EXIT_FOR_TAG[verdict(g).tag]


def test_cli_partition(tmp_path):
    code, out = run(["partition", "@f.txt"], tmp_path, {"f.txt": SQUARE_PATH})
    assert code == 0 and out == "{D1,D2} | {D3,D4}\n"
    code, out = run(["partition", "--all", "@f.txt"], tmp_path, {"f.txt": SQUARE_PATH})
    assert out.splitlines() == ["{D1,D2} | {D3,D4}", "{D3,D4} | {D1,D2}"]
    code, out = run(["partition", "@f.txt"], tmp_path, {"f.txt": serialize_graph(gallery.bidirected_pentagon())})
    assert code == 1 and "odd cycle" in out


def test_cli_access_graph_and_simulate(tmp_path):
    square = serialize_graph(gallery.one_way_square())
    code, out = run(["access-graph", "@s.txt"], tmp_path, {"s.txt": square})
    assert code == 0 and "7 vertices, 6 edges" in out and "T4\\3" in out
    code, out = run(["simulate", "@s.txt", "--calls", "2,3"], tmp_path, {"s.txt": square})
    assert code == 0 and "delivered at D3: {Y^{3->4}}" in out
    code, out = run(["simulate", "@s.txt", "--calls", "2,9"], tmp_path, {"s.txt": square})
    assert code == 64


def test_cli_enumerate_record(tmp_path):
    code, out = run(["enumerate", "--n", "3", "--lemmas", "noc-star,overlap", "--format", "record"])
    assert code == 0
    assert out == "noc-star\tall\t3\t64\t0\noverlap\tall\t3\t64\t0\n"
    code, out = run(["enumerate", "--class", "bidirected", "--n", "4", "--census", "--format", "record"])
    assert "census\tbidirected\t4\tunknown\t0" in out
    code, out = run(["enumerate", "--n", "4", "--shard", "1/2", "--lemmas", "overlap"])
    assert code == 0 and "shard 1/2" in out


def test_cli_from_spacetime_and_dot(tmp_path):
    scen = "minkowski d=1\ncall 0 0 return 0 0\ncall 10 5 return 10 5\n"
    code, out = run(["from-spacetime", "@s.txt"], tmp_path, {"s.txt": scen})
    assert code == 0 and out == "vertices 2\n1 -> 2\n"
    code, out = run(["export-dot", "--access", "@g.txt"], tmp_path, {"g.txt": serialize_graph(gallery.one_way_square())})
    assert code == 0 and out.startswith("graph access {")


def test_cli_errors(tmp_path, capsys):
    assert run(["check", "@missing.txt"], tmp_path)[0] == 66
    assert run(["check", "@bad.txt"], tmp_path, {"bad.txt": "vertices 2\n1 <-> 1\n"})[0] == 65
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["enumerate", "--n", "3", "--shard", "5/2"])
    assert exc.value.code == 64
    assert run(["enumerate", "--n", "7"])[0] == 64
    assert "line 2" in capsys.readouterr().err


def test_cli_is_deterministic(tmp_path):
    files = {"f.txt": PENTAGON_CHORD}
    assert run(["check", "@f.txt"], tmp_path, files) == run(["check", "@f.txt"], tmp_path, files)
