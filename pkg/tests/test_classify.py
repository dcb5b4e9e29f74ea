import pytest

from conftest import directed_cycle
from src.digraphs.constructions import generalised_wreath
from src.digraphs.digraph import Digraph, opposite
from src.errors import PreconditionError
from src.symmetry.automorphisms import are_isomorphic, automorphism_group
from src.symmetry.classify import (GraphClass, atd_defects, classify_graph, max_s_arc_transitivity,
                                   maximal_hat_stab_orders, orbit_count, split_arc_orbits, stabiliser_report,
                                   transitivity_flags)


def test_s_arc_level_of_wreath(w3):
    level = max_s_arc_transitivity(w3, automorphism_group(w3))
    assert level.level == 2
    assert not level.saturated


def test_s_arc_level_saturates_on_directed_cycle():
    C = directed_cycle(5)
    level = max_s_arc_transitivity(C, automorphism_group(C), s_cap=4)
    assert level.level == 4
    assert level.saturated


def test_s_arc_cap_must_be_positive(w3):
    with pytest.raises(PreconditionError):
        max_s_arc_transitivity(w3, automorphism_group(w3), s_cap=0)


def test_orbit_count_of_edges(octahedron):
    edges = [a for a in octahedron.arcs if a[0] < a[1]]
    assert orbit_count(automorphism_group(octahedron), edges, unordered=True) == 1
    assert orbit_count(automorphism_group(octahedron), []) == 0


def test_transitivity_flags(octahedron, w3):
    flags = transitivity_flags(octahedron, automorphism_group(w3))
    assert flags.vertex and flags.edge and not flags.arc
    assert flags.half_arc
    assert transitivity_flags(octahedron, automorphism_group(octahedron)).arc


def test_transitivity_flags_need_automorphisms(octahedron, s4):
    with pytest.raises(PreconditionError):
        transitivity_flags(octahedron, s4)


def test_graph_classes(octahedron, petersen, cube):
    assert classify_graph(octahedron) is GraphClass.ARC_TRANSITIVE
    assert classify_graph(petersen) is GraphClass.ARC_TRANSITIVE
    assert classify_graph(cube) is GraphClass.ARC_TRANSITIVE


def test_classify_needs_a_graph(w3):
    with pytest.raises(PreconditionError):
        classify_graph(w3)


def test_split_arc_orbits_recovers_the_orientation(octahedron, w3):
    D, R = split_arc_orbits(octahedron, automorphism_group(w3))
    assert are_isomorphic(D, w3) or are_isomorphic(D, opposite(w3))
    assert R == opposite(D)
    assert D.arc_set | R.arc_set == octahedron.arc_set


def test_split_needs_half_arc_transitive_group(octahedron):
    with pytest.raises(PreconditionError):
        split_arc_orbits(octahedron, automorphism_group(octahedron))


def test_atd_defects(w3, octahedron):
    assert atd_defects(w3) == []
    assert 'not asymmetric' in atd_defects(octahedron)
    assert 'not 2-valent regular' in atd_defects(octahedron)


def test_atd_defects_on_disconnected_union():
    # two disjoint copies of W(3)
    arcs = [(0, 2), (0, 3), (1, 2), (1, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 0), (4, 1), (5, 0), (5, 1)]
    union = Digraph(12, arcs + [(u + 6, v + 6) for u, v in arcs])
    assert atd_defects(union) == ['not connected']


def test_stabiliser_report_of_wreath(w3):
    report = stabiliser_report(w3)
    assert report.stab_order == 4
    assert report.stab_abelian
    assert report.aut_solvable
    assert report.index_in_graph_aut == 2
    assert report.index_to_smallest_at_overgroup == 2


def test_stabiliser_report_rejects_non_atd(octahedron):
    with pytest.raises(PreconditionError):
        stabiliser_report(octahedron)


def test_stabiliser_of_generalised_wreath():
    D = generalised_wreath(5, 2)
    assert stabiliser_report(D).stab_order == 8
    assert automorphism_group(D).order() == 5 * 2 ** 5


def test_maximal_hat_stab_orders_from_family(w3):
    result = maximal_hat_stab_orders([w3, opposite(w3)])
    assert result.orders == [4]
    assert result.complete


def test_maximal_hat_stab_orders_by_descent(octahedron):
    result = maximal_hat_stab_orders([], mode='descent', graph=octahedron)
    assert 4 in result.orders
    assert not result.complete


def test_maximal_hat_stab_orders_rejects_mixed_family(w3):
    with pytest.raises(PreconditionError):
        maximal_hat_stab_orders([w3, generalised_wreath(4, 1)])


def test_maximal_hat_stab_orders_unknown_mode(w3):
    with pytest.raises(PreconditionError):
        maximal_hat_stab_orders([w3], mode='guess')
