from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from entsummon import gallery
from entsummon.access_pair import build_access_pair_graph
from entsummon.causal_model import CausalGraph
from entsummon.enumeration import monogamy_agrees_with_bruteforce
from entsummon.graph_core import even_simple_path_exists_bruteforce
from entsummon.ess_conditions import (
    AccessStructure,
    InvalidAccessStructure,
    M1Violation,
    M2Violation,
    M3Violation,
    check_M1,
    check_M2,
    check_M3,
    check_monogamy,
    check_no_odd_cycles,
    check_validity,
    monogamy_violations_bruteforce,
    realizable_unknown_partner,
)

# access-graph vertex indices for the one-way square
T1, T2, T3, T4, T1w2, T3w2, T4w3 = range(7)


def graphs_upto(n_max, alphabet=range(4)):
    for n in range(n_max + 1):
        for states in product(alphabet, repeat=n * (n - 1) // 2):
            yield CausalGraph(n, states)


@pytest.fixture
def square():
    g = gallery.one_way_square()
    return g, build_access_pair_graph(g)


def test_validity_examples(square):
    assert check_validity(square[1]) == (True, None)
    bad = AccessStructure(("A", "B"), (frozenset({"y"}), frozenset({"y"})), frozenset({(0, 1)}))
    assert check_validity(bad) == (False, (0, 1))
    assert check_validity(AccessStructure(("A",), (frozenset({"y"}),), frozenset())) == (True, None)
    with pytest.raises(InvalidAccessStructure):
        check_monogamy(bad)


def test_monogamy_examples(square):
    _, apg = square
    found = check_monogamy(apg)
    # shortest, lowest-index witness; the wing-to-wing path through T2 is also a violation
    assert found.path == (T1, T3, T4w3)
    assert (T1w2, T3w2) in monogamy_violations_bruteforce(apg)
    assert monogamy_violations_bruteforce(apg) == {(T1, T4w3), (T2, T4w3), (T3, T1w2), (T4, T1w2), (T1w2, T3w2)}
    single = AccessStructure(("A", "B"), (frozenset({1}), frozenset({2})), frozenset({(0, 1)}))
    assert check_monogamy(single) is None
    assert check_monogamy(build_access_pair_graph(gallery.bidirected_pentagon())) is not None


def test_no_odd_cycle_examples(square):
    assert check_no_odd_cycles(square[1]) is None
    assert len(check_no_odd_cycles(build_access_pair_graph(gallery.bidirected_pentagon()))) == 5
    tree = AccessStructure(tuple("ABCD"), tuple(frozenset({k}) for k in range(4)),
                           frozenset({(0, 1), (1, 2), (1, 3)}))
    assert check_no_odd_cycles(tree) is None


def test_m1_examples(square):
    g, apg = square
    # odd path from wing T1\2 back to its own body: T1\2 - T2 - T4 - T1
    assert check_M1(apg) == M1Violation(0, 1, (T1w2, T2, T4, T1))
    assert check_M1(build_access_pair_graph(gallery.bidirected_pentagon())) is None
    star = build_access_pair_graph(CausalGraph.from_arrows(4, [(0, 1), (0, 2), (0, 3)]))
    assert check_M1(star) is None


def test_m1_violations_of_one_way_square(square):
    g, apg = square
    # every wing whose body is reached by an even path from the wing's anchor
    bad = {(apg.keys[w].callee, apg.keys[w].withheld) for w in apg.wings()
           if even_simple_path_exists_bruteforce(apg.graph, apg.keys[w].withheld, apg.keys[w].callee)}
    assert bad == {(0, 1), (3, 2)}


def test_m2_examples(square):
    g, apg = square
    assert check_M2(g, apg) == M2Violation(1, 0, 2)
    two = gallery.two_out()
    assert check_M2(two, build_access_pair_graph(two)) == M2Violation(1, 0, 2)
    chain = gallery.one_way_chain()
    assert check_M2(chain, build_access_pair_graph(chain)) is None


def test_m3_examples(square):
    g, apg = square
    assert check_M3(g, apg) == M3Violation(1, 1, 0, 2, (1,))
    for h in (gallery.one_way_chain(), gallery.bidirected_pentagon()):
        assert check_M3(h, build_access_pair_graph(h)) is None


def test_realizable_examples(square):
    assert realizable_unknown_partner(square[1])[0] is False
    assert realizable_unknown_partner(build_access_pair_graph(gallery.bidirected_pentagon()))[0] is False
    ok, witness = realizable_unknown_partner(build_access_pair_graph(gallery.bidirected_square_path()))
    assert ok and witness is None


def test_lemma_properties_exhaustive_4():
    for g in graphs_upto(4):
        apg = build_access_pair_graph(g)
        mono = check_monogamy(apg) is None
        noc = check_no_odd_cycles(apg) is None
        assert not mono or noc
        m3, m2 = check_M3(g, apg) is None, check_M2(g, apg) is None
        assert not m3 or m2
        assert monogamy_agrees_with_bruteforce(apg)


def test_bidirected_bodies_noc_iff_monogamy_upto_5():
    for g in graphs_upto(5, (0, 3)):
        apg = build_access_pair_graph(g)
        assert (check_no_odd_cycles(apg) is None) == (check_monogamy(apg) is None)


@st.composite
def access_structures(draw):
    n = draw(st.integers(1, 8))
    systems = [frozenset(draw(st.sets(st.integers(0, 5), min_size=1, max_size=3))) for _ in range(n)]
    pairs = draw(st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
    edges = {(min(u, v), max(u, v)) for u, v in pairs
             if u != v and not systems[u] & systems[v]}
    return AccessStructure(tuple(map(str, range(n))), tuple(systems), frozenset(edges))


@settings(max_examples=300, deadline=None)
@given(access_structures())
def test_monogamy_matches_bruteforce_upto_8(a):
    assert monogamy_agrees_with_bruteforce(a)
