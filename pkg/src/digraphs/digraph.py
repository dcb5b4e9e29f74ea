"""
This module defines the core digraph type and its elementary structural
operations: opposites, underlying graphs, connectivity, valences, s-arcs,
girth and bipartiteness.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx

from src.config import BUDGETS
from src.errors import BudgetExceededError, PreconditionError
from src.groups.permutation import Permutation

SArc = tuple[int, ...]


class Digraph:
    """
    A finite digraph on the vertices 0..n-1.

    Args:
        n (int): Vertex count.
        arcs (Iterable[tuple[int, int]]): Ordered pairs; duplicates are dropped.
    """
    def __init__(self, n: int, arcs: Iterable[tuple[int, int]]):
        if n <= 0:
            raise PreconditionError("a digraph needs at least one vertex")
        arc_set = set()
        for u, v in arcs:
            u, v = int(u), int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"arc ({u},{v}) has an endpoint outside 0..{n - 1}")
            arc_set.add((u, v))
        self.n = n
        self.arcs: tuple[tuple[int, int], ...] = tuple(sorted(arc_set))
        out_adj: list[list[int]] = [[] for _ in range(n)]
        in_adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.arcs:
            out_adj[u].append(v)
            in_adj[v].append(u)
        self.out_adj: tuple[tuple[int, ...], ...] = tuple(tuple(a) for a in out_adj)
        self.in_adj: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in in_adj)

    @cached_property
    def arc_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.arcs)

    @cached_property
    def is_symmetric(self) -> bool:
        return all((v, u) in self.arc_set for u, v in self.arcs)

    @cached_property
    def is_asymmetric(self) -> bool:
        return all((v, u) not in self.arc_set for u, v in self.arcs)

    @cached_property
    def is_irreflexive(self) -> bool:
        return all(u != v for u, v in self.arcs)

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arc_set

    def edge_count(self) -> int:
        """Number of unordered pairs {u, v}, u != v, joined by an arc in either direction."""
        return len({frozenset(a) for a in self.arcs if a[0] != a[1]})

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return self.n == other.n and self.arcs == other.arcs

    def __hash__(self) -> int:
        return hash((self.n, self.arcs))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={len(self.arcs)})"


def build_digraph(n: int, arc_list: Iterable[tuple[int, int]]) -> Digraph:
    return Digraph(n, arc_list)


def opposite(D: Digraph) -> Digraph:
    return Digraph(D.n, ((v, u) for u, v in D.arcs))


def underlying_graph(D: Digraph) -> Digraph:
    if not D.is_irreflexive:
        raise PreconditionError("underlying graph is undefined for digraphs with loops")
    return Digraph(D.n, list(D.arcs) + [(v, u) for u, v in D.arcs])


def relabel(D: Digraph, perm: Permutation | Sequence[int]) -> Digraph:
    """The image of D under the vertex map ``v -> perm(v)``."""
    images = perm.images if isinstance(perm, Permutation) else perm
    return Digraph(D.n, ((int(images[u]), int(images[v])) for u, v in D.arcs))


def is_automorphism(D: Digraph, perm: Permutation) -> bool:
    images = perm.images
    return all((int(images[u]), int(images[v])) in D.arc_set for u, v in D.arcs)


def to_networkx(D: Digraph) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(range(D.n))
    graph.add_edges_from(D.arcs)
    return graph


def to_undirected_networkx(G: Digraph) -> nx.Graph:
    graph = nx.Graph()
    graph.add_nodes_from(range(G.n))
    graph.add_edges_from((u, v) for u, v in G.arcs if u != v)
    return graph


def is_connected(D: Digraph) -> bool:
    return nx.is_weakly_connected(to_networkx(D))


@dataclass(frozen=True)
class ValenceProfile:
    in_valences: Counter
    out_valences: Counter
    regular_valence: int | None


def valence_profile(D: Digraph) -> ValenceProfile:
    out_vals = [len(a) for a in D.out_adj]
    in_vals = [len(a) for a in D.in_adj]
    regular = None
    if len(set(out_vals) | set(in_vals)) == 1:
        regular = out_vals[0]
    return ValenceProfile(Counter(in_vals), Counter(out_vals), regular)


def successors(D: Digraph, x: SArc) -> list[SArc]:
    """The s-arcs ``(v_1, ..., v_s, w)`` following the s-arc ``x``."""
    last = x[-1]
    before = x[-2] if len(x) > 1 else None
    return [x[1:] + (w,) for w in D.out_adj[last] if w != before]


def s_arcs(D: Digraph, s: int, cap: int | None = None) -> list[SArc]:
    """
    All s-arcs of D in lexicographic order of their vertex tuples.

    Raises:
        BudgetExceededError: More than ``cap`` s-arcs exist.
    """
    if s < 0:
        raise PreconditionError("s must be non-negative")
    cap = BUDGETS['S_ARCS_CAP'] if cap is None else cap
    result: list[SArc] = []
    stack: list[SArc] = [(v,) for v in reversed(range(D.n))]
    while stack:
        x = stack.pop()
        if len(x) == s + 1:
            result.append(x)
            if len(result) > cap:
                raise BudgetExceededError('S_ARCS_CAP', cap, cell=f"{s}-arcs")
            continue
        before = x[-2] if len(x) > 1 else None
        for w in reversed(D.out_adj[x[-1]]):
            if w != before:
                stack.append(x + (w,))
    return result


def girth_and_bipartite(G: Digraph) -> tuple[float, bool]:
    """Girth (``math.inf`` for forests) and bipartiteness of a symmetric digraph."""
    if not G.is_irreflexive:
        raise PreconditionError("girth is computed on loopless graphs only")
    if not G.is_symmetric:
        raise PreconditionError("girth is computed on symmetric digraphs (graphs) only")
    graph = to_undirected_networkx(G)
    girth = nx.girth(graph)
    return (math.inf if girth == math.inf else int(girth)), nx.is_bipartite(graph)
