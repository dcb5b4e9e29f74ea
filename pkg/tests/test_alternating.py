from collections import deque

import pytest

from conftest import directed_cycle
from src.digraphs.constructions import generalised_wreath, wreath
from src.digraphs.digraph import opposite
from src.errors import PreconditionError
from src.invariants.alternating import (AttachmentType, alter_classes, alter_invariants, alternating_cycles,
                                        radius_attachment, walk_signature)


def brute_force_alter_classes(D, t):
    """Vertices reachable by a walk whose partial sums stay in [0, t] and end at 0."""
    classes, seen = [], set()
    for v in range(D.n):
        if v in seen:
            continue
        reached = {(v, 0)}
        queue = deque(reached)
        while queue:
            x, level = queue.popleft()
            steps = [(y, level + 1) for y in D.out_adj[x]] + [(y, level - 1) for y in D.in_adj[x]]
            for state in steps:
                if 0 <= state[1] <= t and state not in reached:
                    reached.add(state)
                    queue.append(state)
        members = sorted(x for x, level in reached if level == 0)
        seen.update(members)
        classes.append(members)
    return classes


def test_walk_signature(w3):
    walk = walk_signature(w3, [0, 2, 1, 3])
    assert walk.signature == (1, -1, 1)
    assert walk.partial_sums == (0, 1, 0, 1)
    assert walk.total == 1
    assert walk.tolerance == (0, 1)


def test_walk_needs_adjacent_vertices(w3):
    with pytest.raises(PreconditionError):
        walk_signature(w3, [0, 1])


def test_alter_classes_of_wreath_are_layers(w3):
    assert alter_classes(w3, 0) == [[v] for v in range(6)]
    assert alter_classes(w3, 1) == [[0, 1], [2, 3], [4, 5]]


@pytest.mark.parametrize("D", [wreath(5), generalised_wreath(4, 2), generalised_wreath(5, 3), directed_cycle(6)])
@pytest.mark.parametrize("t", range(1, 6))
def test_alter_classes_match_walk_enumeration(D, t):
    assert alter_classes(D, t) == brute_force_alter_classes(D, t)


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_alter_invariants_of_wreath(n):
    data = alter_invariants(wreath(n))
    assert data.exponent == 1
    assert data.perimeter == n
    assert data.sequence == [2]
    assert data.canonical


def test_alter_invariants_of_directed_cycle():
    # no two distinct vertices are ever alter-equivalent
    data = alter_invariants(directed_cycle(5))
    assert data.exponent == 0
    assert data.perimeter == 5
    assert data.sequence == []


def test_alter_invariants_vertex_range(w3):
    with pytest.raises(PreconditionError):
        alter_invariants(w3, 6)


@pytest.mark.parametrize("n", [3, 4, 7])
def test_alternating_cycles_of_wreath(n):
    structure = alternating_cycles(wreath(n))
    assert structure.cycle_count == n
    assert structure.radius == 2
    assert structure.attachment == 2
    assert structure.attachment_type is AttachmentType.TIGHT
    assert not structure.degenerate


@pytest.mark.parametrize("n,r", [(3, 2), (4, 2), (4, 3), (5, 2), (6, 4)])
def test_alternating_cycles_partition_the_arcs(n, r):
    D = generalised_wreath(n, r)
    structure = alternating_cycles(D)
    assert structure.cycle_count * 2 * structure.radius == len(D.arcs)
    for v in range(D.n):
        assert v in structure.cycles[structure.tail_cycle[v]]
        assert v in structure.cycles[structure.head_cycle[v]]


GW_BATTERY = [(3, 1), (3, 2), (4, 1), (4, 2), (4, 3), (5, 2), (5, 3), (5, 4), (6, 3), (6, 4)]


@pytest.mark.parametrize("n,r", GW_BATTERY)
def test_every_vertex_lies_on_two_alternating_cycles(n, r):
    structure = alternating_cycles(generalised_wreath(n, r))
    assert not structure.degenerate
    for v in range(n * 2 ** r):
        assert sum(v in cycle for cycle in structure.cycles) == 2
        assert structure.tail_cycle[v] != structure.head_cycle[v]


@pytest.mark.parametrize("n,r", GW_BATTERY)
def test_attachment_divides_the_cycle_length(n, r):
    structure = alternating_cycles(generalised_wreath(n, r))
    assert (2 * structure.radius) % structure.attachment == 0


@pytest.mark.parametrize("n,r", GW_BATTERY)
def test_tight_exactly_when_alter_exponent_is_one(n, r):
    D = generalised_wreath(n, r)
    tight = alternating_cycles(D).attachment_type is AttachmentType.TIGHT
    assert tight == (alter_invariants(D).exponent == 1)


@pytest.mark.parametrize("n,r", GW_BATTERY)
def test_alter_invariants_agree_with_the_opposite(n, r):
    D = generalised_wreath(n, r)
    assert alter_invariants(D) == alter_invariants(opposite(D))


def test_loose_attachment_of_generalised_wreath():
    D = generalised_wreath(3, 2)
    structure = alternating_cycles(D)
    assert structure.cycle_count == 6
    assert (structure.radius, structure.attachment) == (2, 1)
    assert structure.attachment_type is AttachmentType.LOOSE
    data = alter_invariants(D)
    assert (data.exponent, data.perimeter, data.sequence) == (2, 3, [2, 4])


def test_radius_attachment(w3):
    assert radius_attachment(w3) == (2, 2, AttachmentType.TIGHT)


def test_alternating_cycles_need_two_valent_asymmetric_digraph(octahedron):
    with pytest.raises(PreconditionError):
        alternating_cycles(octahedron)
    with pytest.raises(PreconditionError):
        alternating_cycles(directed_cycle(4))
