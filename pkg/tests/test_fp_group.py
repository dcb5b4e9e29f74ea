import pytest

from src.errors import BudgetExceededError, PreconditionError, PresentationSyntaxError
from src.groups.fp_group import (UniversalType, commutator, conjugate, free_reduce, parse_presentation, reduced_types,
                                 reverse_type, todd_coxeter, universal_catalogue, universal_group)

INVOLUTIONS = {
    1: "a^2",
    2: "a^2,b^2,a^gb",
    3: "a^2,b^2,c^2,a^gb,b^gc",
    4: "a^2,b^2,c^2,d^2,a^gb,b^gc,c^gd",
    5: "a^2,b^2,c^2,d^2,e^2,a^gb,b^gc,c^gd,d^ge",
}
GENERATORS = {1: "a,g", 2: "a,b,g", 3: "a,b,c,g", 4: "a,b,c,d,g", 5: "a,b,c,d,e,g"}

TABLE = [
    ('A_1^1', ""),
    ('A_2^1', "[a,b]"),
    ('A_3^1', "[a,b],[a,c]"),
    ('A_3^2', "[a,b],[a,c]b"),
    ('A_4^1', "[a,b],[a,c],[a,d]"),
    ('A_4^2', "[a,b],[a,c],[a,d]b"),
    ('A_4^3', "[a,b],[a,c],[a,d]bc"),
    ('A_5^1', "[a,b],[a,c],[a,d],[a,e]"),
    ('A_5^2', "[a,b],[a,c],[a,d],[a,e]b"),
    ('A_5^3', "[a,b],[a,c],[a,d],[a,e]c"),
    ('A_5^4', "[a,b],[a,c],[a,d],[a,e]bc"),
    ('A_5^5', "[a,b],[a,c],[a,d],[a,e]bd"),
    ('A_5^6', "[a,b],[a,c],[a,d],[a,e]bcd"),
]


def table_presentation(name: str, commutators: str):
    s = int(name[2])
    relators = INVOLUTIONS[s] + ("," + commutators if commutators else "")
    return parse_presentation(f"{GENERATORS[s]} | {relators}")


def test_parse_simple_presentation():
    P = parse_presentation("x, y | x^2, y^3, (x y)^3")
    assert P.generator_names == ('x', 'y')
    assert P.relators[0] == ((0, 1), (0, 1))
    assert P.relators[1] == ((1, 1),) * 3


def test_parse_conjugate_and_commutator():
    P = parse_presentation("a,b,g | a^g b, [a,b]")
    a, b, g = ((0, 1),), ((1, 1),), ((2, 1),)
    assert P.relators[0] == free_reduce(conjugate(a, g) + b)
    assert P.relators[1] == commutator(a, b)


def test_parse_drops_trivial_and_duplicate_relators():
    P = parse_presentation("a | a^2, a a, a a^-1, 1")
    assert P.relators == (((0, 1), (0, 1)),)


def test_parse_negative_exponent():
    P = parse_presentation("a,b | (a b)^-2")
    assert P.relators[0] == ((1, -1), (0, -1), (1, -1), (0, -1))


def test_syntax_error_reports_position():
    with pytest.raises(PresentationSyntaxError) as info:
        parse_presentation("a,b | a^2, c")
    assert info.value.position == 11


@pytest.mark.parametrize("text", ["a, b a^2", "a,a | a", "a | (a", "a | a^-", "a | [a a]"])
def test_malformed_presentations(text):
    with pytest.raises(PresentationSyntaxError):
        parse_presentation(text)


def test_reduced_type_counts():
    assert [len(reduced_types(s)) for s in range(1, 6)] == [1, 1, 2, 3, 6]


@pytest.mark.parametrize("name,commutators", TABLE)
def test_universal_groups_match_table(name, commutators):
    catalogue = {t.name: P for t, P in universal_catalogue(5)}
    expected = table_presentation(name, commutators)
    assert catalogue[name].generator_names == expected.generator_names
    assert frozenset(catalogue[name].relators) == frozenset(expected.relators)


def test_universal_catalogue_bounds():
    assert len(universal_catalogue(5)) == 13
    with pytest.raises(PreconditionError):
        universal_catalogue(6)
    with pytest.raises(PreconditionError):
        universal_catalogue(0)


def test_reverse_type_flips_bit_rows():
    t = UniversalType(5, 4, ((1, 0, 0),))
    assert reverse_type(t) == UniversalType(5, 4, ((0, 0, 1),))
    assert reverse_type(reverse_type(t)) == t


def test_type_parameters_are_validated():
    with pytest.raises(PreconditionError):
        UniversalType(3, 1)
    with pytest.raises(PreconditionError):
        UniversalType(4, 3, ((1,),))


def test_todd_coxeter_enumerates_a4():
    P = parse_presentation("x,y | x^2, y^3, (x y)^3")
    table = todd_coxeter(P, [])
    assert table.index == 12
    assert todd_coxeter(P, [((1, 1),)]).index == 4


def test_todd_coxeter_respects_cap():
    P = parse_presentation("x,y | x^2, y^3, (x y)^3")
    with pytest.raises(BudgetExceededError):
        todd_coxeter(P, [], coset_cap=5)


def test_universal_group_prints_in_table_order():
    P = universal_group(reduced_types(2)[0])
    assert str(P) == "a,b,g | a^2, b^2, g^-1 a g b, a^-1 b^-1 a b"
