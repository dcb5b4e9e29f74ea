import pytest

from conftest import directed_cycle
from src.errors import PreconditionError
from src.groups.perm_group import PermutationGroup
from src.groups.regular import Flavor, SearchStatus, regular_subgroup_search
from src.symmetry.automorphisms import automorphism_group
from src.symmetry.classify import CayleyType, cayley_type, is_cayley


@pytest.mark.parametrize("flavor", list(Flavor))
def test_s4_has_regular_subgroups_of_every_flavor(s4, flavor):
    outcome = regular_subgroup_search(s4, flavor)
    assert outcome.status is SearchStatus.FOUND
    assert outcome.witness.is_regular()


def test_witness_flavor_is_respected(s4):
    witness = regular_subgroup_search(s4, 'cyclic').witness
    assert witness.is_abelian()
    assert any(g.order() == 4 for g in witness.elements())


def test_petersen_automorphisms_have_no_regular_subgroup(petersen):
    outcome = regular_subgroup_search(automorphism_group(petersen), Flavor.ANY)
    assert outcome.status is SearchStatus.NONE


def test_budget_exhaustion_is_unknown(s4):
    assert regular_subgroup_search(s4, Flavor.ANY, node_budget=0).status is SearchStatus.UNKNOWN


def test_intransitive_group_is_rejected():
    with pytest.raises(PreconditionError):
        regular_subgroup_search(PermutationGroup([], 3))


def test_cayley_types(cube, k5, octahedron, petersen):
    assert cayley_type(k5) is CayleyType.CIRCULANT
    assert cayley_type(octahedron) is CayleyType.CIRCULANT
    assert cayley_type(cube) is CayleyType.ABELIAN_CAYLEY
    assert cayley_type(petersen) is CayleyType.NON_CAYLEY


def test_is_cayley(cube, petersen):
    assert is_cayley(cube) is CayleyType.CAYLEY
    assert is_cayley(petersen) is CayleyType.NON_CAYLEY


def test_directed_cycle_is_circulant():
    assert cayley_type(directed_cycle(7)) is CayleyType.CIRCULANT
