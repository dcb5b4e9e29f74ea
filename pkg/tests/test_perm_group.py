import pytest
from sympy.combinatorics import Permutation as SymPermutation
from sympy.combinatorics import PermutationGroup as SymGroup

from src.errors import BudgetExceededError, PreconditionError
from src.groups.named_groups import (alternating_group, cyclic_group, dihedral_group, direct_product, pgl2, psl2,
                                     sl2, symmetric_group)
from src.groups.perm_group import (PermutationGroup, coset_action, core_info, core_subgroup, orbits_and_stabiliser,
                                   overgroups_up_to)
from src.groups.permutation import Permutation


def sympy_order(G: PermutationGroup) -> int:
    return SymGroup([SymPermutation(g.tolist()) for g in G.generators]).order()


def test_product_applies_left_factor_first():
    p = Permutation.from_cycles(3, (0, 1))
    q = Permutation.from_cycles(3, (1, 2))
    assert (p * q)(0) == q(p(0)) == 2
    assert (p * q).tolist() == (SymPermutation(p.tolist()) * SymPermutation(q.tolist())).array_form


def test_rejects_non_bijection():
    with pytest.raises(PreconditionError):
        Permutation([0, 0, 1])


def test_power_inverse_and_order():
    p = Permutation.from_cycles(6, (0, 1, 2), (3, 4))
    assert p.order() == 6
    assert (p ** 6).is_identity()
    assert p ** -1 == p.inverse()
    assert (p * p.inverse()).is_identity()
    assert p.cycles() == [(0, 1, 2), (3, 4)]
    assert p.cycle_type() == [1, 2, 3]


def test_commutator_of_commuting_elements_is_trivial():
    p = Permutation.from_cycles(4, (0, 1))
    q = Permutation.from_cycles(4, (2, 3))
    assert p.commutator(q).is_identity()


@pytest.mark.parametrize("factory,order", [
    (lambda: symmetric_group(5), 120),
    (lambda: alternating_group(5), 60),
    (lambda: dihedral_group(5), 10),
    (lambda: pgl2(7), 336),
    (lambda: sl2(7), 336),
    (lambda: psl2(7), 168),
    (lambda: direct_product(psl2(7), cyclic_group(2)), 336),
])
def test_group_orders_match_sympy(factory, order):
    G = factory()
    assert G.order() == order
    assert sympy_order(G) == order


def test_membership(s4):
    assert Permutation.from_cycles(4, (0, 2, 3)) in s4
    assert Permutation.from_cycles(4, (0, 1)) not in alternating_group(4)
    assert Permutation.identity(5) not in s4


def test_elements_are_distinct(d5):
    elements = list(d5.elements())
    assert len(elements) == 10
    assert len(set(elements)) == 10


def test_orbit_stabiliser(d5):
    orbits, stab = orbits_and_stabiliser(d5, 0)
    assert orbits == [[0, 1, 2, 3, 4]]
    assert stab.order() == 2
    with pytest.raises(PreconditionError):
        orbits_and_stabiliser(d5, 5)


def test_pointwise_stabiliser(s4):
    assert s4.pointwise_stabilizer([0, 1]).order() == 2


def test_solvability():
    assert symmetric_group(4).is_solvable()
    assert not alternating_group(5).is_solvable()
    assert not pgl2(7).is_solvable()


def test_abelian(c4, s4):
    assert c4.is_abelian()
    assert not s4.is_abelian()


def test_coset_action_of_point_stabiliser(s4):
    action = coset_action(s4, s4.stabilizer(0))
    assert action.index == 4
    assert action.transversal[0].is_identity()
    image = PermutationGroup(action.generator_images(), action.index)
    assert image.order() == 24


def test_coset_action_respects_cap(s4):
    with pytest.raises(BudgetExceededError):
        coset_action(s4, PermutationGroup([], 4), cap=10)


def test_core_of_point_stabiliser_is_trivial(s4):
    assert core_info(s4, s4.stabilizer(0)) == (1, True)


def test_core_of_normal_subgroup_is_itself(s4):
    klein = PermutationGroup([Permutation.from_cycles(4, (0, 1), (2, 3)), Permutation.from_cycles(4, (0, 2), (1, 3))])
    assert core_info(s4, klein) == (4, False)
    assert core_subgroup(s4, klein).order() == 4


def test_core_needs_a_subgroup(c4, s4):
    with pytest.raises(PreconditionError):
        core_info(c4, s4)


def test_overgroups_of_trivial_subgroup_of_s3():
    S3 = symmetric_group(3)
    overgroups = overgroups_up_to(S3, PermutationGroup([], 3))
    assert [K.order() for K in overgroups] == [1, 2, 2, 2, 3, 6]
