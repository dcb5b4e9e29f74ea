import math

import pytest

from conftest import directed_cycle
from src.digraphs.digraph import (Digraph, build_digraph, girth_and_bipartite, is_connected, opposite, relabel,
                                  s_arcs, successors, underlying_graph, valence_profile)
from src.errors import BudgetExceededError, PreconditionError


def test_build_drops_duplicate_arcs():
    D = build_digraph(3, [(0, 1), (0, 1), (1, 2)])
    assert D.arcs == ((0, 1), (1, 2))
    assert D.out_adj[0] == (1,)
    assert D.in_adj[2] == (1,)


def test_build_rejects_out_of_range_endpoint():
    with pytest.raises(PreconditionError):
        build_digraph(3, [(0, 3)])


def test_opposite_reverses_every_arc(w3):
    R = opposite(w3)
    assert R.arc_set == {(v, u) for u, v in w3.arcs}
    assert opposite(R) == w3


def test_underlying_graph_of_wreath_is_octahedron(w3):
    U = underlying_graph(w3)
    assert U.is_symmetric
    assert valence_profile(U).regular_valence == 4
    assert U.edge_count() == 12


def test_underlying_graph_rejects_loops():
    with pytest.raises(PreconditionError):
        underlying_graph(Digraph(2, [(0, 0), (0, 1)]))


def test_wreath_is_asymmetric_and_two_valent(w3):
    assert w3.is_asymmetric
    assert w3.is_irreflexive
    assert valence_profile(w3).regular_valence == 2
    assert is_connected(w3)


def test_valence_profile_of_irregular_digraph():
    profile = valence_profile(Digraph(3, [(0, 1), (0, 2)]))
    assert profile.regular_valence is None
    assert profile.out_valences[2] == 1


def test_relabel_preserves_structure(w3):
    perm = [5, 4, 3, 2, 1, 0]
    D = relabel(w3, perm)
    assert len(D.arcs) == len(w3.arcs)
    assert all((perm[u], perm[v]) in D.arc_set for u, v in w3.arcs)


def test_s_arc_counts(w3):
    # every arc of a 2-valent asymmetric digraph has exactly two successors
    assert len(s_arcs(w3, 0)) == 6
    assert len(s_arcs(w3, 1)) == 12
    assert len(s_arcs(w3, 2)) == 24
    assert s_arcs(w3, 1) == sorted(s_arcs(w3, 1))


def test_s_arcs_of_directed_cycle():
    C = directed_cycle(5)
    assert s_arcs(C, 3)[0] == (0, 1, 2, 3)
    assert len(s_arcs(C, 7)) == 5


def test_s_arcs_respects_cap(w3):
    with pytest.raises(BudgetExceededError) as info:
        s_arcs(w3, 3, cap=10)
    assert info.value.budget == 'S_ARCS_CAP'


def test_successors_skip_backtracking(octahedron):
    for w in successors(octahedron, (0, 2)):
        assert w[0] == 2 and w[1] != 0


def test_girth_and_bipartite(octahedron, cube, petersen):
    assert girth_and_bipartite(octahedron) == (3, False)
    assert girth_and_bipartite(cube) == (4, True)
    assert girth_and_bipartite(petersen) == (5, False)


def test_girth_of_a_tree_is_infinite():
    path = Digraph(3, [(0, 1), (1, 0), (1, 2), (2, 1)])
    assert girth_and_bipartite(path)[0] == math.inf


def test_girth_needs_a_graph(w3):
    with pytest.raises(PreconditionError):
        girth_and_bipartite(w3)


def test_disconnected_digraph():
    assert not is_connected(Digraph(4, [(0, 1), (2, 3)]))


def test_girth_rejects_loops():
    looped = Digraph(2, [(0, 0), (0, 1), (1, 0)])
    assert looped.is_symmetric
    with pytest.raises(PreconditionError, match="loopless"):
        girth_and_bipartite(looped)
