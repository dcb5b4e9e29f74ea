import pytest

from src.errors import BudgetExceededError, PreconditionError
from src.invariants.consistent import Chirality, consistent_cycles, cycle_length_bounds, normalise, reverse
from src.symmetry.automorphisms import automorphism_group


def test_normalise_and_reverse():
    assert normalise((3, 1, 2)) == (1, 2, 3)
    assert reverse((0, 1, 2, 3)) == (0, 3, 2, 1)


def test_octahedron_under_full_automorphism_group(octahedron):
    orbits = consistent_cycles(octahedron, automorphism_group(octahedron))
    assert [o.marker for o in orbits] == ['3s', '4s', '6s']
    assert cycle_length_bounds(orbits) == (3, 6)
    assert all(o.verify() for o in orbits)


def test_octahedron_under_half_arc_transitive_group(octahedron, w3):
    orbits = consistent_cycles(octahedron, automorphism_group(w3))
    assert len(orbits) == 4
    assert all(o.chirality is Chirality.CHIRAL for o in orbits)
    assert all(o.verify() for o in orbits)


def test_complete_graph(k5):
    orbits = consistent_cycles(k5, automorphism_group(k5))
    assert [o.marker for o in orbits] == ['3s', '4s', '5s']
    assert [o.orbit_size for o in orbits] == [20, 30, 24]


def test_representatives_start_at_the_base_vertex(petersen):
    for orbit in consistent_cycles(petersen, automorphism_group(petersen)):
        assert orbit.representative[0] == 0


def test_consistent_cycles_need_a_graph(w3):
    with pytest.raises(PreconditionError):
        consistent_cycles(w3, automorphism_group(w3))


def test_consistent_cycles_cap(k5):
    with pytest.raises(BudgetExceededError):
        consistent_cycles(k5, automorphism_group(k5), cap=10)


def test_length_bounds_need_cycles():
    with pytest.raises(PreconditionError):
        cycle_length_bounds([])
