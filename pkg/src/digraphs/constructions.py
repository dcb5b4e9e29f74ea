"""
Constructive families of 2-ATDs: wreath digraphs, partial line digraphs,
generalised wreath digraphs and coset digraphs.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property

from src.config import BUDGETS, CENSUS_DEFAULTS
from src.digraphs.digraph import Digraph, s_arcs, successors
from src.errors import PreconditionError
from src.groups.perm_group import CosetAction, PermutationGroup, coset_action, core_info
from src.groups.permutation import Permutation

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class GwParams:
    """Parameters (n, r) of the generalised wreath digraph W(n, r)."""
    n: int
    r: int

    @property
    def vertex_count(self) -> int:
        return self.n * 2 ** self.r

    @property
    def arc_transitive(self) -> bool:
        return self.n >= self.r + 1

    @property
    def name(self) -> str:
        return f"GWD({self.n};{self.r})"


def wreath(n: int) -> Digraph:
    """W_n on Z_n x Z_2, vertex (i, a) encoded as 2i + a."""
    if n < 3:
        raise PreconditionError(f"wreath digraphs need n >= 3, got {n}")
    arcs = [(2 * i + a, 2 * ((i + 1) % n) + b) for i in range(n) for a in (0, 1) for b in (0, 1)]
    return Digraph(2 * n, arcs)


def partial_line(D: Digraph, r: int, cap: int | None = None) -> Digraph:
    """
    Pl^r(D): the digraph on the r-arcs of D with successor adjacency.

    Vertices are numbered by the lexicographic rank of their r-arc tuples.
    """
    if r < 0:
        raise PreconditionError("r must be non-negative")
    if r == 0:
        return D
    vertices = s_arcs(D, r, cap)
    index = {x: i for i, x in enumerate(vertices)}
    arcs = [(i, index[y]) for i, x in enumerate(vertices) for y in successors(D, x)]
    return Digraph(len(vertices), arcs)


def generalised_wreath(n: int, r: int) -> Digraph:
    if n < 3 or not 1 <= r <= n - 1:
        raise PreconditionError(f"W(n,r) needs n >= 3 and 1 <= r <= n-1, got ({n},{r})")
    D = partial_line(wreath(n), r - 1)
    assert D.n == n * 2 ** r
    return D


@dataclass
class GwCatalogueEntry:
    """A catalogue row; the digraph is built on first access."""
    params: GwParams

    @cached_property
    def digraph(self) -> Digraph:
        if self.params.vertex_count > CENSUS_DEFAULTS['GW_LAZY_THRESHOLD']:
            raise PreconditionError(f"{self.params.name} is above the construction threshold")
        return generalised_wreath(self.params.n, self.params.r)


def gw_catalogue(m: int) -> list[GwCatalogueEntry]:
    """All arc-transitive generalised wreath digraphs on at most m vertices."""
    if m < 6:
        raise PreconditionError("the smallest generalised wreath digraph has 6 vertices")
    entries = []
    n = 3
    while 2 * n <= m:
        r = 1
        while r <= n - 1 and n * 2 ** r <= m:
            params = GwParams(n, r)
            if params.arc_transitive:
                entries.append(GwCatalogueEntry(params))
            r += 1
        n += 1
    logger.debug("GW catalogue up to %d vertices: %d entries", m, len(entries))
    return sorted(entries, key=lambda e: (e.params.vertex_count, e.params.n, e.params.r))


@dataclass
class CosetSpec:
    """
    Attributes:
        group (PermutationGroup): G.
        subgroup_gens (list[Permutation]): Generators of H inside G.
        shunt (Permutation): g.
    """
    group: PermutationGroup
    subgroup_gens: list[Permutation]
    shunt: Permutation
    subgroup: PermutationGroup = field(init=False)

    def __post_init__(self):
        self.subgroup = PermutationGroup(self.subgroup_gens, self.group.degree)


def double_coset_cosets(action: CosetAction, subgroup: PermutationGroup, g: Permutation) -> list[int]:
    """Indices of the right cosets of H making up HgH."""
    start = action.coset_of(g)
    h_images = [action.action_of(h) for h in subgroup.generators]
    orbit = [start]
    seen = {start}
    for c in orbit:
        for h in h_images:
            d = h(c)
            if d not in seen:
                seen.add(d)
                orbit.append(d)
    return sorted(orbit)


def coset_digraph(spec: CosetSpec) -> tuple[Digraph, list[Permutation]]:
    """
    Cos(G, H, g): right cosets of H, with (Hx, Hy) an arc iff yx^-1 is in HgH.

    Returns:
        tuple[Digraph, list[Permutation]]: The digraph and the coset
        representative labelling each vertex.
    """
    G, H, g = spec.group, spec.subgroup, spec.shunt
    if g not in G or not H.is_subgroup_of(G):
        raise PreconditionError("H and g must lie in G")
    if H.closure([g]).order() != G.order():
        raise PreconditionError("<H, g> is a proper subgroup of G")
    _, core_free = core_info(G, H)
    if not core_free:
        raise PreconditionError("H is not core-free in G")
    action = coset_action(G, H)
    if shunt_inverse_in_double_coset(action, g):
        raise PreconditionError("g^-1 lies in HgH; the coset digraph would not be asymmetric")
    return coset_digraph_from_action(action, g)


def shunt_inverse_in_double_coset(action: CosetAction, g: Permutation) -> bool:
    return action.coset_of(g.inverse()) in set(double_coset_cosets(action, action.subgroup, g))


def coset_digraph_from_action(action: CosetAction, g: Permutation) -> tuple[Digraph, list[Permutation]]:
    """Cos(G, H, g) from an already enumerated coset action; no validity checks."""
    double_coset = double_coset_cosets(action, action.subgroup, g)
    reps = action.transversal
    arcs = [(i, action.coset_of(reps[o] * x)) for i, x in enumerate(reps) for o in double_coset]
    return Digraph(action.index, arcs), list(reps)


def shunt_recover(D: Digraph, G: PermutationGroup, v: int, cap: int | None = None) -> Permutation:
    """
    Some g in G mapping v to an out-neighbour of v, with order at most |V(D)|.

    Raises:
        PreconditionError: G moves v to no out-neighbour.
    """
    cap = BUDGETS['GROUP_ENUMERATION_CAP'] if cap is None else cap
    transversal = G.orbit_transversal(v)
    targets = [w for w in D.out_adj[v] if w in transversal]
    if not targets:
        raise PreconditionError(f"no element of G maps {v} to an out-neighbour")
    for w in targets:
        if transversal[w].order() <= D.n:
            return transversal[w]
    stabiliser = G.stabilizer(v)
    checked = 0
    for w in targets:
        for h in stabiliser.elements():
            candidate = h * transversal[w]
            if candidate.order() <= D.n:
                return candidate
            checked += 1
            if checked > cap:
                break
    raise PreconditionError(f"no shunt of order at most {D.n} found at vertex {v}")
