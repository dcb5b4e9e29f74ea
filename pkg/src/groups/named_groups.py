"""
Permutation representations of a few standard groups.
"""

from src.errors import PreconditionError
from src.groups.perm_group import PermutationGroup
from src.groups.permutation import Permutation


def symmetric_group(n: int) -> PermutationGroup:
    if n < 2:
        return PermutationGroup([], max(n, 1))
    return PermutationGroup([Permutation.from_cycles(n, (0, 1)), Permutation.from_cycles(n, range(n))])


def alternating_group(n: int) -> PermutationGroup:
    if n < 3:
        return PermutationGroup([], max(n, 1))
    return PermutationGroup([Permutation.from_cycles(n, (0, 1, k)) for k in range(2, n)])


def cyclic_group(n: int) -> PermutationGroup:
    if n < 2:
        return PermutationGroup([], max(n, 1))
    return PermutationGroup([Permutation.from_cycles(n, range(n))])


def dihedral_group(n: int) -> PermutationGroup:
    """Symmetries of the n-gon, of order 2n."""
    rotation = Permutation([(i + 1) % n for i in range(n)])
    reflection = Permutation([(-i) % n for i in range(n)])
    return PermutationGroup([rotation, reflection])


def direct_product(G: PermutationGroup, H: PermutationGroup) -> PermutationGroup:
    """G x H acting on the disjoint union of the two point sets."""
    n, m = G.degree, H.degree
    gens = [Permutation(g.tolist() + list(range(n, n + m)), check=False) for g in G.generators]
    gens += [Permutation(list(range(n)) + [x + n for x in h.tolist()], check=False) for h in H.generators]
    return PermutationGroup(gens, n + m)


def _check_prime(p: int) -> None:
    if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        raise PreconditionError(f"{p} is not a prime")


def _primitive_root(p: int) -> int:
    for candidate in range(2, p):
        if len({pow(candidate, k, p) for k in range(1, p)}) == p - 1:
            return candidate
    return 1


def _mobius(p: int, a: int, b: int, c: int, d: int) -> Permutation:
    """x -> (ax + b) / (cx + d) on the projective line {0..p-1} + {p = infinity}."""
    images = []
    for x in range(p):
        num, den = (a * x + b) % p, (c * x + d) % p
        images.append(p if den == 0 else num * pow(den, -1, p) % p)
    images.append(p if c % p == 0 else a * pow(c, -1, p) % p)
    return Permutation(images)


def pgl2(p: int) -> PermutationGroup:
    """PGL(2,p) on the p+1 points of the projective line."""
    _check_prime(p)
    root = _primitive_root(p)
    return PermutationGroup([_mobius(p, 1, 1, 0, 1), _mobius(p, root, 0, 0, 1), _mobius(p, 0, -1, 1, 0)])


def psl2(p: int) -> PermutationGroup:
    """PSL(2,p) on the p+1 points of the projective line."""
    _check_prime(p)
    root = _primitive_root(p)
    return PermutationGroup([_mobius(p, 1, 1, 0, 1), _mobius(p, root * root % p, 0, 0, 1), _mobius(p, 0, -1, 1, 0)])


def sl2(p: int) -> PermutationGroup:
    """SL(2,p) acting on the right of the p^2 - 1 nonzero row vectors of GF(p)^2."""
    _check_prime(p)
    vectors = [(x, y) for x in range(p) for y in range(p) if (x, y) != (0, 0)]
    index = {v: i for i, v in enumerate(vectors)}

    def matrix(a: int, b: int, c: int, d: int) -> Permutation:
        return Permutation([index[((x * a + y * c) % p, (x * b + y * d) % p)] for x, y in vectors])

    return PermutationGroup([matrix(1, 1, 0, 1), matrix(0, p - 1, 1, 0)])


def order336_catalogue() -> list[tuple[str, PermutationGroup]]:
    """The order-336 candidates {PGL(2,7), SL(2,7), PSL(2,7) x C2}."""
    return [
        ('PGL(2,7)', pgl2(7)),
        ('SL(2,7)', sl2(7)),
        ('PSL(2,7)xC2', direct_product(psl2(7), cyclic_group(2))),
    ]


BUNDLED_CATALOGUES = {
    'order336': order336_catalogue,
}
