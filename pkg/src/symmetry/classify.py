"""
Transitivity classification of digraphs and 4-valent graphs: s-arc
transitivity, half-arc-transitivity, arc-orbit splitting, vertex-stabiliser
reports, Cayley typing and the stabilisers of maximal half-arc-transitive
subgroups.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from src.config import CENSUS_DEFAULTS
from src.digraphs.digraph import (Digraph, is_automorphism, is_connected, opposite, s_arcs,
                                  underlying_graph, valence_profile)
from src.errors import PreconditionError
from src.groups.perm_group import PermutationGroup, overgroups_up_to
from src.groups.regular import Flavor, SearchStatus, regular_subgroup_search
from src.symmetry.automorphisms import are_isomorphic, automorphism_group, canonical_form

logger = logging.getLogger(__name__)


# --- orbits of induced actions ---

def orbit_labels(G: PermutationGroup, items: Sequence[tuple[int, ...]], unordered: bool = False) -> np.ndarray:
    """
    Orbit label of each item under G acting on vertex tuples.

    Args:
        G (PermutationGroup): The acting group.
        items (Sequence[tuple[int, ...]]): A G-invariant list of tuples.
        unordered (bool): Treat tuples as sets (compare sorted).
    """
    rows = np.array(items, dtype=np.int64).reshape(len(items), -1)
    if unordered:
        rows = np.sort(rows, axis=1)
    index = {tuple(row): i for i, row in enumerate(rows.tolist())}
    sources, targets = [], []
    for gen in G.generators:
        images = gen.images[rows]
        if unordered:
            images = np.sort(images, axis=1)
        try:
            mapped = [index[tuple(row)] for row in images.tolist()]
        except KeyError as exc:
            raise PreconditionError("the item list is not invariant under the group") from exc
        sources.extend(range(len(rows)))
        targets.extend(mapped)
    size = len(rows)
    graph = coo_matrix((np.ones(len(sources)), (sources, targets)), shape=(size, size))
    _, labels = connected_components(graph, directed=True, connection='weak')
    return labels


def orbit_count(G: PermutationGroup, items: Sequence[tuple[int, ...]], unordered: bool = False) -> int:
    if not items:
        return 0
    return len(np.unique(orbit_labels(G, items, unordered)))


# --- s-arc transitivity ---

@dataclass(frozen=True)
class SArcTransitivity:
    """
    Attributes:
        level (int): Largest s <= cap with G transitive on s-arcs; -1 when G
            is not even vertex-transitive.
        saturated (bool): Still transitive at the cap.
    """
    level: int
    saturated: bool


def max_s_arc_transitivity(D: Digraph, G: PermutationGroup, s_cap: int | None = None) -> SArcTransitivity:
    s_cap = CENSUS_DEFAULTS['S_CAP'] if s_cap is None else s_cap
    if s_cap < 1:
        raise PreconditionError("s_cap must be at least 1")
    level = -1
    for s in range(s_cap + 1):
        arcs = s_arcs(D, s)
        if orbit_count(G, arcs) != 1:
            return SArcTransitivity(level, False)
        level = s
    return SArcTransitivity(level, True)


# --- transitivity flags ---

@dataclass(frozen=True)
class TransitivityFlags:
    vertex: bool
    edge: bool
    arc: bool

    @property
    def half_arc(self) -> bool:
        return self.vertex and self.edge and not self.arc


def transitivity_flags(X: Digraph, G: PermutationGroup) -> TransitivityFlags:
    """Vertex, edge and arc transitivity of G on the underlying graph of X."""
    if G.degree != X.n or not all(is_automorphism(X, g) for g in G.generators):
        raise PreconditionError("G is not a group of automorphisms of X")
    U = X if X.is_symmetric else underlying_graph(X)
    edges = [a for a in U.arcs if a[0] < a[1]]
    return TransitivityFlags(
        vertex=G.is_transitive(),
        edge=orbit_count(G, edges, unordered=True) == 1,
        arc=orbit_count(G, list(U.arcs)) == 1,
    )


class GraphClass(str, enum.Enum):
    ARC_TRANSITIVE = 'arcTransitive'
    HALF_ARC_TRANSITIVE = 'halfArcTransitive'
    OTHER = 'other'


def _require_connected_graph(X: Digraph) -> None:
    if not X.is_symmetric:
        raise PreconditionError("expected a graph (symmetric digraph)")
    if not is_connected(X):
        raise PreconditionError("expected a connected graph")


def classify_graph(X: Digraph) -> GraphClass:
    _require_connected_graph(X)
    flags = transitivity_flags(X, automorphism_group(X))
    if flags.vertex and flags.arc:
        return GraphClass.ARC_TRANSITIVE
    if flags.half_arc:
        return GraphClass.HALF_ARC_TRANSITIVE
    return GraphClass.OTHER


def split_arc_orbits(X: Digraph, G: PermutationGroup) -> tuple[Digraph, Digraph]:
    """
    The two G-orbits on the arcs of a 4-valent graph under a
    half-arc-transitive G, as a digraph and its opposite. The first digraph
    holds the arc orbit containing the smallest arc.
    """
    _require_connected_graph(X)
    if valence_profile(X).regular_valence != 4:
        raise PreconditionError("expected a 4-valent graph")
    if not transitivity_flags(X, G).half_arc:
        raise PreconditionError("G does not act half-arc-transitively")
    arcs = list(X.arcs)
    labels = orbit_labels(G, arcs)
    first = labels[0]
    D = Digraph(X.n, (a for a, label in zip(arcs, labels) if label == first))
    return D, opposite(D)


# --- 2-ATD checks and stabiliser data ---

def atd_defects(D: Digraph) -> list[str]:
    """Reasons D fails to be a 2-ATD; empty when it is one."""
    defects = []
    if not D.is_asymmetric:
        defects.append('not asymmetric')
    if valence_profile(D).regular_valence != 2:
        defects.append('not 2-valent regular')
    if not is_connected(D):
        defects.append('not connected')
    if not defects and orbit_count(automorphism_group(D), list(D.arcs)) != 1:
        defects.append('not arc-transitive')
    return defects


@dataclass(frozen=True)
class StabiliserReport:
    """
    Attributes:
        stab_order (int): |G_v| for G = Aut(D).
        stab_abelian (bool): G_v is abelian.
        aut_solvable (bool): G is solvable.
        index_in_graph_aut (int): |A_v : G_v| for A the automorphism group of
            the underlying graph.
        index_to_smallest_at_overgroup (int): Smallest |T_v : G_v| over
            arc-transitive G <= T <= A, or 0 when A is not arc-transitive.
    """
    stab_order: int
    stab_abelian: bool
    aut_solvable: bool
    index_in_graph_aut: int
    index_to_smallest_at_overgroup: int


def stabiliser_report(D: Digraph) -> StabiliserReport:
    defects = atd_defects(D)
    if defects:
        raise PreconditionError(f"not a 2-ATD: {', '.join(defects)}")
    G = automorphism_group(D)
    U = underlying_graph(D)
    A = automorphism_group(U)
    stab_order = G.order() // D.n
    assert stab_order & (stab_order - 1) == 0, "vertex stabiliser of a 2-ATD must be a 2-group"
    arcs = list(U.arcs)
    smallest = 0
    if orbit_count(A, arcs) == 1:
        at_overgroups = [T for T in overgroups_up_to(A, G) if orbit_count(T, arcs) == 1]
        smallest = min(T.order() // G.order() for T in at_overgroups)
    return StabiliserReport(
        stab_order=stab_order,
        stab_abelian=G.stabilizer(0).is_abelian(),
        aut_solvable=G.is_solvable(),
        index_in_graph_aut=A.order() // G.order(),
        index_to_smallest_at_overgroup=smallest,
    )


# --- Cayley typing ---

class CayleyType(str, enum.Enum):
    CIRCULANT = 'Circ'
    ABELIAN_CAYLEY = 'AbCay'
    CAYLEY = 'Cay'
    NON_CAYLEY = 'n-Cay'
    UNKNOWN = '?'


def cayley_type(X: Digraph, node_budget: int | None = None) -> CayleyType:
    """Tiered search: cyclic, then abelian, then any regular subgroup of Aut(X)."""
    A = automorphism_group(X)
    if not A.is_transitive():
        raise PreconditionError("Cayley typing needs a vertex-transitive graph")
    tiers = [
        (Flavor.CYCLIC, CayleyType.CIRCULANT),
        (Flavor.ABELIAN, CayleyType.ABELIAN_CAYLEY),
        (Flavor.ANY, CayleyType.CAYLEY),
    ]
    for flavor, label in tiers:
        outcome = regular_subgroup_search(A, flavor, node_budget)
        if outcome.status is SearchStatus.FOUND:
            return label
        if outcome.status is SearchStatus.UNKNOWN:
            return CayleyType.UNKNOWN
    return CayleyType.NON_CAYLEY


def is_cayley(X: Digraph, node_budget: int | None = None) -> CayleyType:
    """``Cay``, ``n-Cay`` or ``?``."""
    A = automorphism_group(X)
    if not A.is_transitive():
        return CayleyType.NON_CAYLEY
    outcome = regular_subgroup_search(A, Flavor.ANY, node_budget)
    return {
        SearchStatus.FOUND: CayleyType.CAYLEY,
        SearchStatus.NONE: CayleyType.NON_CAYLEY,
        SearchStatus.UNKNOWN: CayleyType.UNKNOWN,
    }[outcome.status]


# --- maximal half-arc-transitive subgroups ---

@dataclass(frozen=True)
class HatStabOrders:
    orders: list[int]
    complete: bool


def _distinct_orientations(family: Iterable[Digraph]) -> list[Digraph]:
    """One digraph per class of {D, opposite(D)} up to isomorphism."""
    kept: list[Digraph] = []
    for D in family:
        if not any(are_isomorphic(K, D) or are_isomorphic(K, opposite(D)) for K in kept):
            kept.append(D)
    return kept


def _index_two_subgroups(K: PermutationGroup) -> list[PermutationGroup]:
    gens = [g for g in K.generators if not g.is_identity()]
    relations = [g * g for g in gens] + [a.commutator(b) for i, a in enumerate(gens) for b in gens[i + 1:]]
    M = K.normal_closure(relations)
    basis = []
    span = M
    for g in gens:
        if g not in span:
            basis.append(g)
            span = span.closure([g])
    assert span.order() == K.order()
    subgroups = []
    for mask in range(1, 2 ** len(basis)):
        odd = [b for i, b in enumerate(basis) if mask >> i & 1]
        even = [b for i, b in enumerate(basis) if not mask >> i & 1]
        pivot = odd[0]
        extra = even + [pivot * b for b in odd[1:]]
        subgroups.append(M.closure(extra))
    return subgroups


def _descent_orientations(X: Digraph, depth: int) -> tuple[list[Digraph], bool]:
    A = automorphism_group(X)
    flags = transitivity_flags(X, A)
    if flags.half_arc:
        return [split_arc_orbits(X, A)[0]], True
    if not flags.arc:
        return [], True
    orientations: list[Digraph] = []
    layer = [A]
    for _ in range(depth):
        next_layer: list[PermutationGroup] = []
        for K in layer:
            for L in _index_two_subgroups(K):
                if any(L.same_group(seen) for seen in next_layer):
                    continue
                lflags = transitivity_flags(X, L)
                if not (lflags.vertex and lflags.edge):
                    continue
                if lflags.arc:
                    next_layer.append(L)
                else:
                    orientations.append(split_arc_orbits(X, L)[0])
        layer = next_layer
        if not layer:
            break
    # index-2 descent can miss maximal subgroups of larger index in every arc-transitive overgroup
    return orientations, False


def maximal_hat_stab_orders(family: Sequence[Digraph], mode: str = 'family', graph: Digraph | None = None,
                            complete: bool = True, depth: int | None = None) -> HatStabOrders:
    """
    Vertex-stabiliser orders of the maximal half-arc-transitive subgroups of
    Aut(graph), one per conjugacy class.

    Args:
        family (Sequence[Digraph]): In ``family`` mode, every 2-ATD orientation
            of the graph known to the caller.
        mode (str): ``family`` or ``descent``. Descent searches index-2
            subgroups of Aut(graph) down to ``depth`` levels and may be
            incomplete.
        graph (Digraph | None): The graph; required in descent mode.
        complete (bool): Whether the caller's family is known to be complete.
    """
    if mode == 'descent':
        if graph is None:
            raise PreconditionError("descent mode needs the graph")
        depth = CENSUS_DEFAULTS['HAT_DESCENT_DEPTH'] if depth is None else depth
        orientations, complete = _descent_orientations(graph, depth)
    elif mode == 'family':
        if not family:
            return HatStabOrders([], False)
        graphs = [underlying_graph(D) for D in family]
        reference = canonical_form(graphs[0]).bytes
        if any(canonical_form(U).bytes != reference for U in graphs[1:]):
            raise PreconditionError("family members have non-isomorphic underlying graphs")
        orientations = list(family)
    else:
        raise PreconditionError(f"unknown mode '{mode}'")
    kept = _distinct_orientations(orientations)
    orders = sorted(automorphism_group(D).order() // D.n for D in kept)
    logger.debug("Maximal HAT stabiliser orders (%s mode): %s", mode, orders)
    return HatStabOrders(orders, complete)
