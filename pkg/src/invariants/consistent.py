"""
G-consistent oriented cycles of vertex-transitive graphs.

An oriented cycle is G-consistent when some element of G rotates it by one
step. Every such cycle through a base vertex u is the orbit of u under
a shunt g mapping u to a neighbour, so tracing u, u^g, u^(g^2), ... for all g
with u^g adjacent to u finds every orbit.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

from src.config import BUDGETS
from src.digraphs.digraph import Digraph
from src.errors import BudgetExceededError, PreconditionError
from src.groups.perm_group import PermutationGroup
from src.groups.permutation import Permutation

logger = logging.getLogger(__name__)

Cycle = tuple[int, ...]


class Chirality(str, enum.Enum):
    CHIRAL = 'chiral'
    SYMMETRIC = 'symmetric'


@dataclass(frozen=True)
class ConsistentCycleOrbit:
    """
    Attributes:
        representative (Cycle): A cycle through the base vertex, smallest
            vertex first.
        chirality (Chirality): Symmetric when the orbit holds the reversed cycle.
        orbit_size (int): Number of oriented cycles in the orbit.
        shunt (Permutation): Rotates ``representative`` by one step.
    """
    representative: Cycle
    chirality: Chirality
    orbit_size: int
    shunt: Permutation

    @property
    def length(self) -> int:
        return len(self.representative)

    def verify(self) -> bool:
        c = self.representative
        return all(self.shunt(c[i]) == c[(i + 1) % len(c)] for i in range(len(c)))

    @property
    def marker(self) -> str:
        """Length with a chirality letter, e.g. ``4c`` or ``10s``."""
        return f"{self.length}{'c' if self.chirality is Chirality.CHIRAL else 's'}"


def normalise(cycle: Cycle) -> Cycle:
    k = cycle.index(min(cycle))
    return cycle[k:] + cycle[:k]


def reverse(cycle: Cycle) -> Cycle:
    return normalise(tuple(reversed(cycle)))


def _trace(u: int, g: Permutation) -> Cycle:
    images = g.images
    walk = [u]
    x = int(images[u])
    while x != u:
        walk.append(x)
        x = int(images[x])
    return tuple(walk)


def consistent_cycles(X: Digraph, G: PermutationGroup, cap: int | None = None) -> list[ConsistentCycleOrbit]:
    """
    All G-orbits of G-consistent oriented cycles, sorted by length and then
    representative.

    Raises:
        BudgetExceededError: More than ``cap`` candidate shunts at the base
            vertex.
    """
    cap = BUDGETS['CONSISTENT_CYCLE_CAP'] if cap is None else cap
    if not X.is_symmetric:
        raise PreconditionError("consistent cycles are computed on graphs")
    if not G.is_transitive():
        raise PreconditionError("G must be vertex-transitive")
    u = 0
    stabiliser = G.stabilizer(u)
    if stabiliser.order() * len(X.out_adj[u]) > cap:
        raise BudgetExceededError('CONSISTENT_CYCLE_CAP', cap, cell=f"|G_u| = {stabiliser.order()}")
    transversal = G.orbit_transversal(u)
    stab_elements = list(stabiliser.elements())

    def act(cycle: Cycle, g: Permutation) -> Cycle:
        return normalise(tuple(int(g.images[x]) for x in cycle))

    orbit_of: dict[Cycle, int] = {}
    found: list[tuple[Cycle, Permutation, set[Cycle]]] = []
    for w in X.out_adj[u]:
        t = transversal[w]
        for h in stab_elements:
            g = h * t
            cycle = _trace(u, g)
            if len(cycle) < 3:
                continue
            cycle = normalise(cycle)
            if cycle in orbit_of:
                continue
            orbit = G.orbit_of_tuple(cycle, act)
            for member in orbit:
                orbit_of[member] = len(found)
            found.append((cycle, g, orbit))

    result = [
        ConsistentCycleOrbit(
            representative=cycle,
            chirality=Chirality.SYMMETRIC if reverse(cycle) in orbit else Chirality.CHIRAL,
            orbit_size=len(orbit),
            shunt=g,
        )
        for cycle, g, orbit in found
    ]
    result.sort(key=lambda o: (o.length, o.representative))
    logger.debug("Consistent cycles on %d vertices: %d orbits", X.n, len(result))
    return result


def cycle_length_bounds(orbits: list[ConsistentCycleOrbit]) -> tuple[int, int]:
    """Shortest and longest consistent cycle lengths."""
    if not orbits:
        raise PreconditionError("no consistent cycles")
    lengths = [o.length for o in orbits]
    return min(lengths), max(lengths)
