"""
Permutation groups backed by a deterministic stabiliser chain.

The chain is built with the incremental Schreier-Sims algorithm: Schreier
generators are sifted level by level from the bottom of the chain upward,
and every failed sift either extends the base (smallest moved point) or adds
a strong generator. No randomisation is used, so the base, the strong
generators and every derived structure are reproducible.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

import numpy as np

from src.config import BUDGETS
from src.errors import BudgetExceededError, PreconditionError
from src.groups.permutation import Permutation

logger = logging.getLogger(__name__)


def _orbit_transversal(generators: Sequence[Permutation], alpha: int, degree: int) -> dict[int, Permutation]:
    """Maps every point beta of the orbit of ``alpha`` to some u with alpha^u = beta."""
    transversal = {alpha: Permutation.identity(degree)}
    queue = [alpha]
    for x in queue:
        u_x = transversal[x]
        for gen in generators:
            y = gen(x)
            if y not in transversal:
                transversal[y] = u_x * gen
                queue.append(y)
    return transversal


def _strip(h: Permutation, base: list[int], transversals: list[dict[int, Permutation]], start: int):
    """Sifts ``h`` through levels ``start..``; returns the residue and the level where it stopped."""
    for level in range(start, len(base)):
        beta = h(base[level])
        u = transversals[level].get(beta)
        if u is None:
            return h, level
        if beta != base[level]:
            h = h * u.inverse()
    return h, len(base)


def schreier_sims(generators: Sequence[Permutation], degree: int, base: Sequence[int] | None = None):
    """
    Extends ``base`` and ``generators`` to a base and strong generating set.

    Args:
        generators (Sequence[Permutation]): Group generators.
        degree (int): Degree of the permutations.
        base (Sequence[int] | None): Prescribed initial base points, kept in
            order even if some of them have trivial basic orbits.

    Returns:
        tuple: ``(base, strong_gens_by_level, transversals)``.
    """
    base = list(base or [])
    gens = [g for g in generators if not g.is_identity()]
    for gen in gens:
        if all(gen(b) == b for b in base):
            base.append(gen.support()[0])

    levels = [[g for g in gens if all(g(b) == b for b in base[:i])] for i in range(len(base))]
    transversals = [_orbit_transversal(levels[i], base[i], degree) for i in range(len(base))]

    i = len(base) - 1
    while i >= 0:
        restart = False
        transversal = transversals[i]
        for beta, u_beta in list(transversal.items()):
            for gen in levels[i]:
                u_target = transversal[gen(beta)]
                g1 = u_beta * gen
                if g1 == u_target:
                    continue
                h, j = _strip(g1 * u_target.inverse(), base, transversals, i + 1)
                if j == len(base) and h.is_identity():
                    continue
                if j == len(base):
                    base.append(h.support()[0])
                    levels.append([])
                    transversals.append({})
                for level in range(i + 1, j + 1):
                    levels[level].append(h)
                    transversals[level] = _orbit_transversal(levels[level], base[level], degree)
                logger.debug("Schreier-Sims: new strong generator at level %d (base length %d)", j, len(base))
                i = j
                restart = True
                break
            if restart:
                break
        if not restart:
            i -= 1
    return base, levels, transversals


class PermutationGroup:
    """
    A permutation group given by generators, with a lazily built stabiliser chain.

    Args:
        generators (Sequence[Permutation]): Generators; all of the same degree.
        degree (int | None): Required when ``generators`` is empty.
    """
    def __init__(self, generators: Sequence[Permutation], degree: int | None = None):
        generators = list(generators)
        if degree is None:
            if not generators:
                raise PreconditionError("degree is required for a group without generators")
            degree = generators[0].degree
        for gen in generators:
            if gen.degree != degree:
                raise PreconditionError(f"degree mismatch: generator of degree {gen.degree} in a group of degree {degree}")
        self.degree = degree
        self.generators = generators
        self._base: list[int] | None = None
        self._levels: list[list[Permutation]] = []
        self._transversals: list[dict[int, Permutation]] = []
        self._orbits: list[list[int]] | None = None

    def __repr__(self) -> str:
        return f"PermutationGroup(degree={self.degree}, generators={len(self.generators)})"

    # --- stabiliser chain ---

    def build_chain(self, base: Sequence[int] | None = None) -> None:
        """(Re)builds the chain, optionally starting from a prescribed base."""
        if self._base is not None and (base is None or list(base) == self._base[:len(base)]):
            return
        self._base, self._levels, self._transversals = schreier_sims(self.generators, self.degree, base)

    @property
    def base(self) -> list[int]:
        self.build_chain()
        return self._base

    @property
    def strong_generators(self) -> list[Permutation]:
        self.build_chain()
        return self._levels[0] if self._levels else []

    def basic_orbits(self) -> list[list[int]]:
        self.build_chain()
        return [sorted(t) for t in self._transversals]

    def order(self) -> int:
        self.build_chain()
        return math.prod(len(t) for t in self._transversals)

    def sift(self, g: Permutation) -> tuple[Permutation, int]:
        self.build_chain()
        return _strip(g, self._base, self._transversals, 0)

    def __contains__(self, g: Permutation) -> bool:
        if g.degree != self.degree:
            return False
        h, level = self.sift(g)
        return level == len(self._base) and h.is_identity()

    def _subgroup_from_level(self, level: int) -> PermutationGroup:
        """The basic stabiliser at ``level``, sharing the tail of this chain."""
        if level >= len(self._base):
            return PermutationGroup([], self.degree)
        sub = PermutationGroup(self._levels[level], self.degree)
        sub._base = self._base[level:]
        sub._levels = self._levels[level:]
        sub._transversals = self._transversals[level:]
        return sub

    def elements(self) -> Iterator[Permutation]:
        """Every element, each exactly once, as products of transversal elements."""
        self.build_chain()
        if not self._transversals:
            yield Permutation.identity(self.degree)
            return
        reps = [list(t.values()) for t in reversed(self._transversals)]
        for choice in itertools.product(*reps):
            g = choice[0]
            for u in choice[1:]:
                g = g * u
            yield g

    # --- orbits and stabilisers ---

    def orbits(self) -> list[list[int]]:
        """Orbit partition of the point set, each orbit sorted, ordered by smallest point."""
        if self._orbits is None:
            parent = np.arange(self.degree)

            def find(x: int) -> int:
                while parent[x] != x:
                    parent[x] = parent[parent[x]]
                    x = parent[x]
                return int(x)

            for gen in self.generators:
                for x, y in enumerate(gen.images):
                    rx, ry = find(x), find(int(y))
                    if rx != ry:
                        parent[max(rx, ry)] = min(rx, ry)
            groups: dict[int, list[int]] = {}
            for x in range(self.degree):
                groups.setdefault(find(x), []).append(x)
            self._orbits = [groups[r] for r in sorted(groups)]
        return self._orbits

    def orbit(self, point: int) -> list[int]:
        for orb in self.orbits():
            if point in orb:
                return orb
        raise PreconditionError(f"point {point} out of range for degree {self.degree}")

    def orbit_transversal(self, point: int) -> dict[int, Permutation]:
        return _orbit_transversal(self.generators, point, self.degree)

    def is_transitive(self) -> bool:
        return len(self.orbits()) == 1

    def is_regular(self) -> bool:
        return self.is_transitive() and self.order() == self.degree

    def stabilizer(self, point: int) -> PermutationGroup:
        return self.pointwise_stabilizer([point])

    def pointwise_stabilizer(self, points: Sequence[int]) -> PermutationGroup:
        chain = PermutationGroup(self.generators, self.degree)
        chain.build_chain(base=list(points))
        return chain._subgroup_from_level(len(points))

    def orbit_of_tuple(self, items, action: Callable) -> set:
        """Orbit of an arbitrary object under ``action(obj, generator)``."""
        orbit = {items}
        queue = [items]
        for x in queue:
            for gen in self.generators:
                y = action(x, gen)
                if y not in orbit:
                    orbit.add(y)
                    queue.append(y)
        return orbit

    # --- structure ---

    def is_subgroup_of(self, other: PermutationGroup) -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)

    def same_group(self, other: PermutationGroup) -> bool:
        return self.order() == other.order() and self.is_subgroup_of(other)

    def is_abelian(self) -> bool:
        gens = self.generators
        return all(a * b == b * a for a, b in itertools.combinations(gens, 2))

    def closure(self, extra: Sequence[Permutation]) -> PermutationGroup:
        return PermutationGroup(self.generators + [g for g in extra if g not in self], self.degree)

    def normal_closure(self, gens: Sequence[Permutation]) -> PermutationGroup:
        """Smallest normal subgroup of this group containing ``gens``."""
        closure = PermutationGroup([g for g in gens if not g.is_identity()], self.degree)
        changed = True
        while changed:
            changed = False
            for n in list(closure.generators):
                for x in self.generators:
                    conj = n.conjugate(x)
                    if conj not in closure:
                        closure = PermutationGroup(closure.generators + [conj], self.degree)
                        changed = True
        return closure

    def derived_subgroup(self) -> PermutationGroup:
        commutators = [a.commutator(b) for a, b in itertools.combinations(self.generators, 2)]
        return self.normal_closure(commutators)

    def derived_series(self) -> list[PermutationGroup]:
        series = [self]
        while True:
            derived = series[-1].derived_subgroup()
            if derived.order() == series[-1].order():
                return series
            series.append(derived)

    def is_solvable(self) -> bool:
        return self.derived_series()[-1].order() == 1

    def is_normal_in(self, other: PermutationGroup) -> bool:
        return all(n.conjugate(x) in self for n in self.generators for x in other.generators)


# --- coset actions ---

@dataclass
class CosetAction:
    """
    Right-multiplication action of G on the right cosets of H.

    Attributes:
        group (PermutationGroup): G.
        subgroup (PermutationGroup): H.
        transversal (list[Permutation]): Coset representatives, identity first.
    """
    group: PermutationGroup
    subgroup: PermutationGroup
    transversal: list[Permutation]
    _orbits: list[np.ndarray]
    _buckets: dict[bytes, list[int]]

    @property
    def index(self) -> int:
        return len(self.transversal)

    def _key(self, g: Permutation) -> bytes:
        return b''.join(np.sort(g.images[orbit]).tobytes() for orbit in self._orbits)

    def coset_of(self, g: Permutation) -> int | None:
        """Index of the coset Hg, or None when it is not yet listed."""
        for idx in self._buckets.get(self._key(g), []):
            if g * self.transversal[idx].inverse() in self.subgroup:
                return idx
        return None

    def _register(self, g: Permutation) -> int:
        self._buckets.setdefault(self._key(g), []).append(len(self.transversal))
        self.transversal.append(g)
        return len(self.transversal) - 1

    def action_of(self, g: Permutation) -> Permutation:
        return Permutation([self.coset_of(rep * g) for rep in self.transversal], check=False)

    def generator_images(self) -> list[Permutation]:
        return [self.action_of(g) for g in self.group.generators]


def coset_action(G: PermutationGroup, H: PermutationGroup, cap: int | None = None) -> CosetAction:
    """
    Enumerates the right cosets of H in G.

    Args:
        G (PermutationGroup): The group.
        H (PermutationGroup): A subgroup of G.
        cap (int | None): Index cap; defaults to ``BUDGETS['COSET_INDEX_CAP']``.

    Returns:
        CosetAction: Transversal with ``transversal[0]`` the identity.
    """
    cap = BUDGETS['COSET_INDEX_CAP'] if cap is None else cap
    if not H.is_subgroup_of(G):
        raise PreconditionError("H is not a subgroup of G")
    index = G.order() // H.order()
    if index > cap:
        raise BudgetExceededError('COSET_INDEX_CAP', cap, cell=f"index {index}")
    orbits = [np.array(orb) for orb in H.orbits()]
    action = CosetAction(G, H, [], orbits, {})
    action._register(Permutation.identity(G.degree))
    for rep in action.transversal:
        if len(action.transversal) == index:
            break
        for gen in G.generators:
            candidate = rep * gen
            if action.coset_of(candidate) is None:
                action._register(candidate)
    return action


# --- convenience wrappers ---

def stabilizer_chain(generators: Sequence[Permutation], degree: int | None = None) -> PermutationGroup:
    group = PermutationGroup(generators, degree)
    group.build_chain()
    return group


def orbits_and_stabiliser(G: PermutationGroup, v: int) -> tuple[list[list[int]], PermutationGroup]:
    if not 0 <= v < G.degree:
        raise PreconditionError(f"point {v} out of range for degree {G.degree}")
    stab = G.stabilizer(v)
    assert G.order() == len(G.orbit(v)) * stab.order()
    return G.orbits(), stab


def is_solvable(G: PermutationGroup) -> bool:
    return G.is_solvable()


def is_abelian_group(G: PermutationGroup) -> bool:
    return G.is_abelian()


def core_info(G: PermutationGroup, H: PermutationGroup) -> tuple[int, bool]:
    """
    Order of the core of H in G, read off the faithfulness of the coset action.

    The core is the kernel of G acting on the right cosets of H.
    """
    if not H.is_subgroup_of(G):
        raise PreconditionError("H is not a subgroup of G")
    action = coset_action(G, H)
    image = PermutationGroup(action.generator_images(), action.index)
    core_order = G.order() // image.order()
    return core_order, core_order == 1


def core_subgroup(G: PermutationGroup, H: PermutationGroup) -> PermutationGroup:
    """
    The core of H in G as a subgroup, computed as the kernel of the coset action.

    G acts on its own points and the cosets side by side; the pointwise
    stabiliser of all coset points, restricted to the original points, is the kernel.
    """
    action = coset_action(G, H)
    n, m = G.degree, action.index
    combined = [
        Permutation(np.concatenate([g.images, action.action_of(g).images + n]), check=False)
        for g in G.generators
    ]
    kernel = PermutationGroup(combined, n + m).pointwise_stabilizer(list(range(n, n + m)))
    return PermutationGroup([Permutation(k.images[:n], check=False) for k in kernel.generators], n)


def overgroups_up_to(A: PermutationGroup, G: PermutationGroup, cap: int | None = None) -> list[PermutationGroup]:
    """
    All subgroups of A containing G, ordered by group order.

    Every intermediate group is ``<G, x_1, ..., x_k>`` for coset
    representatives ``x_i``, so closing the list under adjoining one
    representative at a time reaches all of them.
    """
    cap = BUDGETS['OVERGROUP_INDEX_CAP'] if cap is None else cap
    if not G.is_subgroup_of(A):
        raise PreconditionError("G is not a subgroup of A")
    index = A.order() // G.order()
    if index > cap:
        raise BudgetExceededError('OVERGROUP_INDEX_CAP', cap, cell=f"|A:G| = {index}")
    reps = coset_action(A, G).transversal[1:]
    found = [G]
    queue = [G]
    for K in queue:
        for x in reps:
            if x in K:
                continue
            candidate = K.closure([x])
            order = candidate.order()
            if any(F.order() == order and candidate.is_subgroup_of(F) for F in found):
                continue
            found.append(candidate)
            queue.append(candidate)
    return sorted(found, key=lambda K: K.order())
