"""
Walk signatures, alter-equivalence classes and alternating cycles of
asymmetric digraphs.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from src.digraphs.digraph import Digraph, is_connected, valence_profile
from src.errors import PreconditionError
from src.symmetry.automorphisms import automorphism_group

logger = logging.getLogger(__name__)


# --- walks ---

@dataclass(frozen=True)
class Walk:
    """
    Attributes:
        vertices (tuple[int, ...]): v_0 .. v_n.
        signature (tuple[int, ...]): +1 for a step along an arc, -1 against.
        partial_sums (tuple[int, ...]): s_0 = 0, s_1, ..., s_n.
    """
    vertices: tuple[int, ...]
    signature: tuple[int, ...]
    partial_sums: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        sums = [0]
        for step in self.signature:
            sums.append(sums[-1] + step)
        object.__setattr__(self, 'partial_sums', tuple(sums))

    @property
    def total(self) -> int:
        return self.partial_sums[-1]

    @property
    def tolerance(self) -> tuple[int, int]:
        return min(self.partial_sums), max(self.partial_sums)


def walk_signature(D: Digraph, vertices: Sequence[int]) -> Walk:
    if not D.is_asymmetric:
        raise PreconditionError("walk signatures need an asymmetric digraph")
    if not vertices:
        raise PreconditionError("a walk has at least one vertex")
    signature = []
    for u, v in zip(vertices, vertices[1:]):
        if D.has_arc(u, v):
            signature.append(1)
        elif D.has_arc(v, u):
            signature.append(-1)
        else:
            raise PreconditionError(f"{u} and {v} are not adjacent")
    return Walk(tuple(int(v) for v in vertices), tuple(signature))


# --- alter-equivalence ---

def _require_connected_asymmetric(D: Digraph) -> None:
    if not D.is_asymmetric:
        raise PreconditionError("expected an asymmetric digraph")
    if not is_connected(D):
        raise PreconditionError("expected a connected digraph")


def alter_class_labels(D: Digraph, t: int) -> np.ndarray:
    """
    Class label of every vertex under alter-equivalence with tolerance [0, t].

    Components of the layered graph on V x {0..t} joining (v, k) and
    (w, k+1) for every arc (v, w), read off at level 0. Labels are numbered
    by first occurrence.
    """
    if t < 0:
        raise PreconditionError("t must be non-negative")
    n = D.n
    arcs = np.array(D.arcs, dtype=np.int64).reshape(-1, 2)
    levels = np.arange(t)
    rows = (levels[:, None] * n + arcs[:, 0][None, :]).reshape(-1)
    cols = ((levels[:, None] + 1) * n + arcs[:, 1][None, :]).reshape(-1)
    size = n * (t + 1)
    graph = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(size, size))
    _, labels = connected_components(graph, directed=False)
    _, first, inverse = np.unique(labels[:n], return_index=True, return_inverse=True)
    rank = np.argsort(np.argsort(first))
    return rank[inverse.reshape(-1)]


def alter_classes(D: Digraph, t: int) -> list[list[int]]:
    _require_connected_asymmetric(D)
    labels = alter_class_labels(D, t)
    classes: dict[int, list[int]] = {}
    for v, label in enumerate(labels.tolist()):
        classes.setdefault(label, []).append(v)
    return [classes[k] for k in sorted(classes)]


@dataclass(frozen=True)
class AlterData:
    """
    Attributes:
        exponent (int): Smallest e with the classes at e and e + 1 equal.
        perimeter (int): Number of classes at the exponent.
        sequence (list[int]): Size of the class of v at t = 1 .. e.
        canonical (bool): Aut(D) is vertex-transitive, so the sequence does
            not depend on v.
    """
    exponent: int
    perimeter: int
    sequence: list[int]
    canonical: bool = True


def alter_invariants(D: Digraph, v: int = 0) -> AlterData:
    _require_connected_asymmetric(D)
    if not 0 <= v < D.n:
        raise PreconditionError(f"vertex {v} out of range")
    canonical = automorphism_group(D).is_transitive()
    if not canonical:
        logger.warning("Alter sequence of a digraph that is not vertex-transitive depends on the base vertex %d", v)
    labels = [alter_class_labels(D, 0)]
    t = 0
    while True:
        labels.append(alter_class_labels(D, t + 1))
        if np.array_equal(labels[t], labels[t + 1]):
            break
        t += 1
    exponent = t
    perimeter = int(labels[exponent].max()) + 1
    sequence = [int(np.count_nonzero(labels[k] == labels[k][v])) for k in range(1, exponent + 1)]
    return AlterData(exponent, perimeter, sequence, canonical)


# --- alternating cycles ---

class AttachmentType(str, enum.Enum):
    TIGHT = 'tight'
    ANTIPODAL = 'antipodal'
    LOOSE = 'loose'
    OTHER = 'other'


@dataclass(frozen=True)
class AlternatingStructure:
    """
    Attributes:
        cycles (list[tuple[int, ...]]): Vertex sequences, each starting with
            the tail of its smallest arc.
        tail_cycle (list[int]): Index of the cycle holding the out-arcs of v.
        head_cycle (list[int]): Index of the cycle holding the in-arcs of v.
        radius (int): Half the common cycle length.
        attachment (int): Vertices shared by two intersecting cycles.
        attachment_type (AttachmentType): Tight, antipodal, loose or other.
        degenerate (bool): The two cycles through some vertex coincide.
    """
    cycles: list[tuple[int, ...]]
    tail_cycle: list[int]
    head_cycle: list[int]
    radius: int
    attachment: int
    attachment_type: AttachmentType
    degenerate: bool = False

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)


def _other(pair: tuple[int, ...], x: int) -> int:
    return pair[1] if pair[0] == x else pair[0]


def _attachment_type(radius: int, attachment: int, degenerate: bool) -> AttachmentType:
    if not degenerate and attachment == radius:
        return AttachmentType.TIGHT
    if degenerate:
        return AttachmentType.OTHER
    if attachment == 2:
        return AttachmentType.ANTIPODAL
    if attachment == 1:
        return AttachmentType.LOOSE
    return AttachmentType.OTHER


def alternating_cycles(D: Digraph) -> AlternatingStructure:
    """
    Traces every alternating cycle: from an arc (u, v) step back along the
    other in-arc of v, then forward along the other out-arc of its tail, and
    so on until the first arc returns.
    """
    _require_connected_asymmetric(D)
    if valence_profile(D).regular_valence != 2:
        raise PreconditionError("alternating cycles are traced in 2-valent digraphs")
    n = D.n
    cycle_of_arc: dict[tuple[int, int], int] = {}
    cycles: list[tuple[int, ...]] = []
    for start in D.arcs:
        if start in cycle_of_arc:
            continue
        index = len(cycles)
        walk = [start[0]]
        tail, head = start
        while True:
            cycle_of_arc[(tail, head)] = index
            walk.append(head)
            tail = _other(D.in_adj[head], tail)
            cycle_of_arc[(tail, head)] = index
            walk.append(tail)
            head = _other(D.out_adj[tail], head)
            if (tail, head) == start:
                break
        cycles.append(tuple(walk[:-1]))

    tail_cycle = [cycle_of_arc[(v, D.out_adj[v][0])] for v in range(n)]
    head_cycle = [cycle_of_arc[(D.in_adj[v][0], v)] for v in range(n)]
    lengths = {len(c) for c in cycles}
    if len(lengths) != 1:
        raise PreconditionError(f"alternating cycles of different lengths {sorted(lengths)}")
    length = lengths.pop()
    radius = length // 2

    members = [set(c) for c in cycles]
    degenerate = any(tail_cycle[v] == head_cycle[v] for v in range(n))
    if degenerate:
        attachment = length
    else:
        sizes = {len(members[tail_cycle[v]] & members[head_cycle[v]]) for v in range(n)}
        if len(sizes) > 1:
            logger.warning("Intersecting alternating cycles share %s vertices; using the smallest", sorted(sizes))
        attachment = min(sizes)
    return AlternatingStructure(
        cycles=cycles,
        tail_cycle=tail_cycle,
        head_cycle=head_cycle,
        radius=radius,
        attachment=attachment,
        attachment_type=_attachment_type(radius, attachment, degenerate),
        degenerate=degenerate,
    )


def radius_attachment(D: Digraph) -> tuple[int, int, AttachmentType]:
    structure = alternating_cycles(D)
    return structure.radius, structure.attachment, structure.attachment_type
