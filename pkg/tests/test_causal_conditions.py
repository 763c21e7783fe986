from itertools import product

from entsummon import gallery
from entsummon.causal_conditions import (
    ConditionTable,
    OddCycle,
    PartitionWitness,
    Tag,
    TournamentCover,
    TournamentGap,
    TwoOut,
    check_bidirected_theorem,
    check_double_star,
    check_M1_star,
    check_M2_star,
    check_M3_star,
    check_NOC_star,
    check_oriented_theorem,
    verdict,
    verdict_tag,
    verify_verdict,
)
from entsummon.causal_model import CausalGraph, Relation
from entsummon.graph_core import undirected_complement


def fs(*xs):
    return frozenset(xs)


def graphs_upto(n_max, alphabet=range(4)):
    for n in range(n_max + 1):
        for states in product(alphabet, repeat=n * (n - 1) // 2):
            yield CausalGraph(n, states)


def test_noc_star_examples():
    assert check_NOC_star(gallery.bidirected_pentagon()) is None
    assert check_NOC_star(gallery.bidirected_square_path()) == PartitionWitness(fs(0, 1), fs(2, 3))
    assert check_NOC_star(gallery.complete_bidirected(3)) == PartitionWitness(fs(0, 1, 2), fs())


def test_m1_star_examples():
    assert check_M1_star(gallery.one_way_chain()) is None
    # complement of the one-way square is the path D2 - D4 - D1 - D3,
    # so D2 and D1 share a colour and the edge D2 -> D1 cannot be split
    assert check_M1_star(gallery.one_way_square()) == (1, 0)
    assert check_M1_star(gallery.bidirected_pentagon()) is None
    assert check_M1_star(gallery.pentagon_with_one_way_chord()) == (3, 0)


def test_m2_star_examples():
    assert check_M2_star(gallery.two_out()) == TwoOut(1, 0, 2)
    assert check_M2_star(gallery.one_way_square()) == TwoOut(1, 0, 2)
    assert check_M2_star(gallery.one_way_chain()) is None


def test_m3_star_examples():
    assert check_M3_star(gallery.one_way_square()) == (1, 1, 0, 2)
    assert check_M3_star(gallery.bidirected_pentagon()) is None
    assert check_M3_star(gallery.pentagon_with_one_way_chord()) is None


def test_double_star_examples():
    assert check_double_star(gallery.complete_bidirected(4)).passed
    two = check_double_star(gallery.two_out())
    assert two.m3 == (1, 1, 0, 2)
    assert check_double_star(gallery.bidirected_square_path()).passed


def test_bidirected_theorem_examples():
    v = check_bidirected_theorem(gallery.bidirected_pentagon())
    assert v.tag is Tag.INFEASIBLE and len(v.witness.cycle) == 5
    comp = undirected_complement(gallery.bidirected_pentagon())
    cyc = v.witness.cycle
    assert all(comp.has_edge(cyc[k], cyc[(k + 1) % 5]) for k in range(5))
    v = check_bidirected_theorem(gallery.bidirected_square_path())
    assert v.tag is Tag.FEASIBLE and v.witness == PartitionWitness(fs(0, 1), fs(2, 3))
    v = check_bidirected_theorem(gallery.hexagon_with_diameter())
    assert v.tag is Tag.INFEASIBLE and v.witness == OddCycle((0, 2, 4))


def test_oriented_theorem_examples():
    v = check_oriented_theorem(gallery.one_way_chain())
    assert v.tag is Tag.FEASIBLE
    assert v.witness == TournamentCover((fs(1, 2), fs(2), fs(0)))
    v = check_oriented_theorem(gallery.two_out())
    assert v.tag is Tag.INFEASIBLE and v.witness == TournamentGap(1, 0, 2)
    assert check_oriented_theorem(CausalGraph.empty(1)).tag is Tag.FEASIBLE


def test_verdict_goldens():
    cases = {
        "one_way_chain": (Tag.FEASIBLE, "oriented-tournament"),
        "bidirected_square_path": (Tag.FEASIBLE, "bidirected-theorem"),
        "two_out": (Tag.INFEASIBLE, "M2*-necessity"),
        "one_way_square": (Tag.INFEASIBLE, "M2*-necessity"),
        "bidirected_pentagon": (Tag.INFEASIBLE, "bidirected-theorem"),
        "hexagon_with_diameter": (Tag.INFEASIBLE, "bidirected-theorem"),
        "pentagon_with_one_way_chord": (Tag.UNKNOWN, "open"),
        "pentagon_with_bidirected_chord": (Tag.FEASIBLE, "bidirected-theorem"),
    }
    for name, (tag, reason) in cases.items():
        v = verdict(getattr(gallery, name)())
        assert (v.tag, v.reason) == (tag, reason), name
    v = verdict(gallery.pentagon_with_one_way_chord())
    assert isinstance(v.witness, ConditionTable)
    assert v.witness.passed == {"NOC*": True, "M1*": False, "M2*": True, "M3*": True}


def test_edgeless_pair_is_feasible():
    v = verdict(CausalGraph.empty(2))
    assert v.tag is Tag.FEASIBLE and v.witness == PartitionWitness(fs(0), fs(1))


def test_characterized_classes_never_unknown():
    for g in graphs_upto(4, (0, 1, 2)):
        assert verdict(g).tag is not Tag.UNKNOWN
    for g in graphs_upto(5, (0, 3)):
        assert verdict(g).tag is not Tag.UNKNOWN


def test_verdicts_verified_and_fast_path_agrees_exhaustive_4():
    for g in graphs_upto(4):
        v = verdict(g)
        assert verify_verdict(g, v)
        assert verdict_tag(g) is v.tag


def test_witness_checkability_exhaustive_4():
    for g in graphs_upto(4):
        v = verdict(g)
        w = v.witness
        if isinstance(w, PartitionWitness):
            assert w.first | w.second == frozenset(range(g.n)) and not w.first & w.second
            for side in (w.first, w.second):
                assert all(g.adjacent(a, b) for a in side for b in side if a < b)
        if isinstance(w, OddCycle):
            comp = undirected_complement(g)
            c = w.cycle
            assert len(c) % 2 == 1
            assert all(comp.has_edge(c[k], c[(k + 1) % len(c)]) for k in range(len(c)))


def test_relaxing_one_way_edge_never_breaks_feasibility_exhaustive_4():
    for g in graphs_upto(4):
        if verdict(g).tag is not Tag.FEASIBLE:
            continue
        for i, j, s in g.pairs():
            if s in (Relation.FORWARD, Relation.BACKWARD):
                assert verdict(g.with_state(i, j, Relation.BIDIRECTED)).tag is not Tag.INFEASIBLE


def test_verify_rejects_tampered_witness():
    g = gallery.bidirected_square_path()
    v = verdict(g)
    forged = v.__class__(v.tag, v.reason, PartitionWitness(fs(0, 2), fs(1, 3)))
    assert not verify_verdict(g, forged)
    g = gallery.bidirected_pentagon()
    v = verdict(g)
    assert not verify_verdict(g, v.__class__(v.tag, v.reason, OddCycle((0, 1, 2))))
