import pytest

from src.errors import BudgetExceededError, PreconditionError
from src.groups.fp_group import parse_presentation, reduced_types, universal_catalogue, universal_group
from src.groups.named_groups import alternating_group, cyclic_group, dihedral_group, symmetric_group
from src.groups.quotients import (_cayley_key, classic_normal_quotients, low_index_normal_quotients,
                                  normal_quotients_of_index, quotient_search_in_group)


def kernels(records):
    """Quotients compared by their standardised Cayley tables, one per kernel."""
    return sorted(_cayley_key(r.generator_images, r.index) for r in records)


@pytest.fixture
def a4_presentation():
    return parse_presentation("x,y | x^2, y^3, (x y)^3")


@pytest.fixture
def d5_presentation():
    return parse_presentation("a,b | a^2, b^2, (a b)^5")


def test_normal_quotients_of_a4(a4_presentation):
    records = low_index_normal_quotients(a4_presentation, 12)
    assert [r.index for r in records] == [1, 3, 12]
    assert records[-1].image_group().order() == 12
    assert records[-1].image_group().is_regular()


def test_normal_quotients_of_d5(d5_presentation):
    assert [r.index for r in low_index_normal_quotients(d5_presentation, 10)] == [1, 2, 10]


@pytest.mark.parametrize("text,max_index", [
    ("x,y | x^2, y^3, (x y)^3", 12),
    ("a,b | a^2, b^2, (a b)^5", 10),
    ("a,b | a^2, b^2, (a b)^4", 8),
    ("a,b | a^4, b^2, (a b)^2", 8),
])
def test_regular_search_agrees_with_generic_enumeration(text, max_index):
    P = parse_presentation(text)
    regular = low_index_normal_quotients(P, max_index)
    classic = classic_normal_quotients(P, max_index)
    assert [r.index for r in regular] == [r.index for r in classic]
    for fast, slow in zip(regular, classic):
        assert fast.image_group().order() == slow.image_group().order()
    assert kernels(regular) == kernels(classic)


# generic enumeration does not finish at index 12 in reasonable time
@pytest.mark.parametrize("universal", universal_catalogue(3), ids=lambda entry: entry[0].name)
def test_regular_search_agrees_on_universal_groups(universal):
    _, P = universal
    regular = low_index_normal_quotients(P, 6)
    assert len(regular) > 1
    assert kernels(regular) == kernels(classic_normal_quotients(P, 6))


def test_quotient_images_satisfy_the_relators():
    P = universal_group(reduced_types(2)[0])
    records = normal_quotients_of_index(P, 12)
    assert records
    for record in records:
        a, b, g = record.generator_images
        assert (a * a).is_identity() and (b * b).is_identity()
        assert a.conjugate(g) == b


def test_index_must_be_positive(a4_presentation):
    with pytest.raises(PreconditionError):
        normal_quotients_of_index(a4_presentation, 0)


def test_node_budget_is_enforced(a4_presentation):
    with pytest.raises(BudgetExceededError) as info:
        normal_quotients_of_index(a4_presentation, 12, node_budget=0)
    assert info.value.budget == 'QUOTIENT_DFS_NODES'


def test_epimorphisms_onto_a4_share_one_kernel(a4_presentation):
    epis = quotient_search_in_group(a4_presentation, alternating_group(4))
    assert len(epis) == 1
    assert epis[0].kernel_index == 12


def test_epimorphisms_onto_groups_that_are_not_quotients(a4_presentation):
    assert quotient_search_in_group(a4_presentation, cyclic_group(2)) == []
    assert quotient_search_in_group(a4_presentation, symmetric_group(4)) == []


def test_epimorphisms_onto_dihedral_group(d5_presentation):
    # the two generators may be sent to any pair of reflections generating D5,
    # and all such pairs differ by an automorphism
    assert len(quotient_search_in_group(d5_presentation, dihedral_group(5))) == 1


def test_group_enumeration_cap(a4_presentation):
    with pytest.raises(BudgetExceededError):
        quotient_search_in_group(a4_presentation, symmetric_group(5), cap=100)
