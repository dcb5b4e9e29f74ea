"""
Automorphism groups and canonical forms of digraphs by
individualisation-refinement.

The search refines an ordered vertex colouring until it is equitable with
respect to both out- and in-neighbourhoods, individualises a vertex of the
first smallest non-singleton cell, and recurses. Each discrete colouring (a
leaf) is a labelling; the canonical form is the leaf with the smallest sorted
arc list. Leaves with equal arc lists yield automorphisms, which prune later
branches by orbits.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from src.config import BUDGETS
from src.digraphs.digraph import Digraph, opposite
from src.errors import BudgetExceededError
from src.groups.perm_group import PermutationGroup
from src.groups.permutation import Permutation

logger = logging.getLogger(__name__)

_ABORT = object()


@dataclass(frozen=True)
class CanonicalForm:
    """
    Attributes:
        bytes (bytes): Vertex count then the sorted canonical arc pairs,
            little-endian unsigned 32-bit.
        relabeling (Permutation): Input vertex -> canonical vertex.
    """
    bytes: bytes
    relabeling: Permutation


@dataclass
class SearchResult:
    canonical: CanonicalForm
    automorphisms: list[Permutation] = field(default_factory=list)
    nodes: int = 0


def _padded_adjacency(adj: tuple[tuple[int, ...], ...], n: int) -> np.ndarray:
    width = max((len(a) for a in adj), default=0)
    pad = np.full((n, width), n, dtype=np.int64)
    for v, nbrs in enumerate(adj):
        pad[v, :len(nbrs)] = nbrs
    return pad


class _IndividualisationRefinement:
    def __init__(self, D: Digraph, node_budget: int):
        self.D = D
        self.n = D.n
        self.node_budget = node_budget
        self.out_pad = _padded_adjacency(D.out_adj, D.n)
        self.in_pad = _padded_adjacency(D.in_adj, D.n)
        arcs = np.array(D.arcs, dtype=np.int64).reshape(-1, 2)
        self.tails, self.heads = arcs[:, 0], arcs[:, 1]
        self.nodes = 0
        self.first: tuple[np.ndarray, np.ndarray] | None = None
        self.best: tuple[np.ndarray, np.ndarray] | None = None
        self.automorphisms: list[Permutation] = []

    # --- colourings ---

    @staticmethod
    def _positions(rows: np.ndarray) -> np.ndarray:
        _, inverse, counts = np.unique(rows, axis=0, return_inverse=True, return_counts=True)
        starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
        return starts[inverse.reshape(-1)]

    def _initial(self) -> np.ndarray:
        valences = np.column_stack([
            [len(a) for a in self.D.in_adj],
            [len(a) for a in self.D.out_adj],
        ])
        return self._refine(self._positions(valences))

    def _refine(self, color: np.ndarray) -> np.ndarray:
        cells = len(np.unique(color))
        while cells < self.n:
            ext = np.append(color, -1)
            rows = np.column_stack([
                color,
                np.sort(ext[self.out_pad], axis=1),
                np.sort(ext[self.in_pad], axis=1),
            ])
            refined = self._positions(rows)
            refined_cells = len(np.unique(refined))
            if refined_cells == cells:
                return refined
            color, cells = refined, refined_cells
        return color

    @staticmethod
    def _individualise(color: np.ndarray, v: int) -> np.ndarray:
        c = color[v]
        child = color.copy()
        child[color == c] = c + 1
        child[v] = c
        return child

    @staticmethod
    def _target_cell(color: np.ndarray) -> list[int] | None:
        values, counts = np.unique(color, return_counts=True)
        mask = counts > 1
        if not mask.any():
            return None
        smallest = counts[mask].min()
        target = values[mask & (counts == smallest)][0]
        return np.flatnonzero(color == target).tolist()

    # --- leaves ---

    def _certificate(self, label: np.ndarray) -> np.ndarray:
        return np.sort(label[self.tails] * self.n + label[self.heads])

    @staticmethod
    def _compare(a: np.ndarray, b: np.ndarray) -> int:
        diff = np.flatnonzero(a != b)
        if not len(diff):
            return 0
        return -1 if a[diff[0]] < b[diff[0]] else 1

    @staticmethod
    def _map_between(source: np.ndarray, target: np.ndarray) -> Permutation:
        """The automorphism sending each vertex at position p in ``source`` to the vertex at p in ``target``."""
        vertex_at = np.empty_like(target)
        vertex_at[target] = np.arange(len(target))
        return Permutation(vertex_at[source], check=False)

    def _leaf(self, label: np.ndarray):
        cert = self._certificate(label)
        if self.first is None:
            self.first = self.best = (label, cert)
            return None
        if self._compare(cert, self.first[1]) == 0:
            self.automorphisms.append(self._map_between(self.first[0], label))
            return _ABORT
        order = self._compare(cert, self.best[1])
        if order == 0:
            self.automorphisms.append(self._map_between(self.best[0], label))
        elif order < 0:
            self.best = (label, cert)
        return None

    # --- search ---

    def _orbit_roots(self, prefix: list[int]) -> np.ndarray:
        parent = np.arange(self.n)

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return int(x)

        for gamma in self.automorphisms:
            images = gamma.images
            if any(images[p] != p for p in prefix):
                continue
            for x in range(self.n):
                rx, ry = find(x), find(int(images[x]))
                if rx != ry:
                    parent[max(rx, ry)] = min(rx, ry)
        return np.array([find(x) for x in range(self.n)])

    def _dfs(self, color: np.ndarray, prefix: list[int], on_first_path: bool):
        self.nodes += 1
        if self.nodes > self.node_budget:
            raise BudgetExceededError('AUT_SEARCH_NODES', self.node_budget, cell=f"digraph on {self.n} vertices")
        cell = self._target_cell(color)
        if cell is None:
            return self._leaf(color)
        explored: list[int] = []
        known_automorphisms = -1
        roots = None
        for w in cell:
            if explored:
                if known_automorphisms != len(self.automorphisms):
                    roots = self._orbit_roots(prefix)
                    known_automorphisms = len(self.automorphisms)
                if roots[w] in {roots[e] for e in explored}:
                    continue
            child = self._refine(self._individualise(color, w))
            result = self._dfs(child, prefix + [w], on_first_path and not explored)
            explored.append(w)
            if result is _ABORT and not on_first_path:
                return _ABORT
        return None

    def run(self) -> SearchResult:
        self._dfs(self._initial(), [], True)
        label = self.best[0]
        pairs = np.column_stack([label[self.tails], label[self.heads]])
        pairs = pairs[np.lexsort((pairs[:, 1], pairs[:, 0]))]
        payload = np.concatenate([[self.n], pairs.reshape(-1)]).astype('<u4').tobytes()
        canonical = CanonicalForm(payload, Permutation(label, check=False))
        logger.debug("Canonical search on %d vertices: %d nodes, %d automorphisms",
                     self.n, self.nodes, len(self.automorphisms))
        return SearchResult(canonical, self.automorphisms, self.nodes)


@lru_cache(maxsize=512)
def canonical_search(D: Digraph, node_budget: int | None = None) -> SearchResult:
    budget = BUDGETS['AUT_SEARCH_NODES'] if node_budget is None else node_budget
    return _IndividualisationRefinement(D, budget).run()


def automorphism_group(D: Digraph) -> PermutationGroup:
    return PermutationGroup(canonical_search(D).automorphisms, D.n)


def canonical_form(D: Digraph) -> CanonicalForm:
    return canonical_search(D).canonical


def are_isomorphic(D1: Digraph, D2: Digraph) -> bool:
    if D1.n != D2.n or len(D1.arcs) != len(D2.arcs):
        return False
    return canonical_form(D1).bytes == canonical_form(D2).bytes


def isomorphism(D1: Digraph, D2: Digraph) -> Permutation | None:
    """A vertex map carrying D1 onto D2, or None."""
    if not are_isomorphic(D1, D2):
        return None
    return canonical_form(D1).relabeling * canonical_form(D2).relabeling.inverse()


def is_self_opposite(D: Digraph) -> bool:
    return are_isomorphic(D, opposite(D))
