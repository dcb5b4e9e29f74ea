"""
Search for regular subgroups of a transitive permutation group, used for
circulant and Cayley recognition.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

import numpy as np

from src.config import BUDGETS
from src.errors import PreconditionError
from src.groups.perm_group import PermutationGroup
from src.groups.permutation import Permutation

logger = logging.getLogger(__name__)


class Flavor(str, enum.Enum):
    CYCLIC = 'cyclic'
    ABELIAN = 'abelian'
    ANY = 'any'


class SearchStatus(str, enum.Enum):
    FOUND = 'found'
    NONE = 'none'
    UNKNOWN = 'unknown'


@dataclass(frozen=True)
class SearchOutcome:
    """
    Attributes:
        status (SearchStatus): ``FOUND``, ``NONE`` (exhaustive) or ``UNKNOWN``
            (node budget spent).
        witness (PermutationGroup | None): A regular subgroup when found.
        nodes (int): Candidate elements examined.
    """
    status: SearchStatus
    witness: PermutationGroup | None = None
    nodes: int = 0


class _BudgetSpent(Exception):
    pass


class _RegularSubgroupBuilder:
    """
    Grows a semiregular subgroup S one element at a time. At each step the
    smallest point p outside the S-orbit of 0 must be reached, so the next
    element is drawn from the elements of G mapping 0 to p. Every regular
    subgroup contains such an element, which makes the search exhaustive.
    """
    def __init__(self, G: PermutationGroup, flavor: Flavor, node_budget: int):
        self.G = G
        self.n = G.degree
        self.flavor = flavor
        self.node_budget = node_budget
        self.nodes = 0
        self.points = np.arange(self.n)
        self.stabiliser = list(G.stabilizer(0).elements())
        self.transversal = G.orbit_transversal(0)
        self.visited: set[frozenset[Permutation]] = set()

    def _candidates(self, p: int):
        t = self.transversal[p]
        for h in self.stabiliser:
            x = h * t
            if self.n % x.order() == 0 and not np.any(x.images == self.points):
                yield x

    def _extend(self, gens: list[Permutation], x: Permutation) -> list[Permutation] | None:
        if self.flavor is not Flavor.ANY and any(x * g != g * x for g in gens):
            return None
        new_gens = gens + [x]
        identity = Permutation.identity(self.n)
        elements = [identity]
        seen = {identity}
        for e in elements:
            for g in new_gens:
                y = e * g
                if y not in seen:
                    # y is not the identity here, so a fixed point breaks semiregularity
                    if len(seen) == self.n or np.any(y.images == self.points):
                        return None
                    seen.add(y)
                    elements.append(y)
        if self.flavor is Flavor.CYCLIC and not any(e.order() == len(elements) for e in elements):
            return None
        return elements

    def _search(self, gens: list[Permutation], elements: list[Permutation]) -> list[Permutation] | None:
        if len(elements) == self.n:
            return gens
        covered = {int(e.images[0]) for e in elements}
        p = next(q for q in range(self.n) if q not in covered)
        for x in self._candidates(p):
            self.nodes += 1
            if self.nodes > self.node_budget:
                raise _BudgetSpent
            grown = self._extend(gens, x)
            if grown is None:
                continue
            key = frozenset(grown)
            if key in self.visited:
                continue
            self.visited.add(key)
            witness = self._search(gens + [x], grown)
            if witness is not None:
                return witness
        return None

    def run(self) -> SearchOutcome:
        try:
            witness = self._search([], [Permutation.identity(self.n)])
        except _BudgetSpent:
            return SearchOutcome(SearchStatus.UNKNOWN, None, self.nodes)
        if witness is None:
            return SearchOutcome(SearchStatus.NONE, None, self.nodes)
        return SearchOutcome(SearchStatus.FOUND, PermutationGroup(witness, self.n), self.nodes)


def regular_subgroup_search(G: PermutationGroup, flavor: Flavor | str = Flavor.ANY,
                            node_budget: int | None = None) -> SearchOutcome:
    """
    Looks for a subgroup of G acting regularly, of the requested flavor.

    Args:
        G (PermutationGroup): A transitive group.
        flavor (Flavor | str): ``cyclic``, ``abelian`` or ``any``.
        node_budget (int | None): Candidate elements to examine before giving
            up with ``UNKNOWN``.
    """
    if not G.is_transitive():
        raise PreconditionError("regular subgroups exist only in transitive groups")
    flavor = Flavor(flavor)
    budget = BUDGETS['REGULAR_SEARCH_NODES'] if node_budget is None else node_budget
    if G.degree == 1:
        return SearchOutcome(SearchStatus.FOUND, PermutationGroup([], 1), 0)
    outcome = _RegularSubgroupBuilder(G, flavor, budget).run()
    logger.debug("Regular %s subgroup search on degree %d: %s after %d nodes",
                 flavor.value, G.degree, outcome.status.value, outcome.nodes)
    return outcome
