"""
Finite quotients of finitely presented groups.

``low_index_normal_quotients`` builds the regular coset table of each
normal subgroup of a given index directly. A normal subgroup of index k is a
coset table on k points whose generator group acts regularly, so for every
point r the map sending 0 to r extends to an automorphism of the table. The
search keeps one partial such map per created point and propagates table
entries through them; relators then only need to be scanned at the base
point.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Sequence

from sympy.combinatorics.fp_groups import low_index_subgroups

from src.config import BUDGETS
from src.errors import BudgetExceededError, PreconditionError
from src.groups.fp_group import FpPresentation, Word, cyclic_conjugates, cyclic_reduce, table_from_sympy, to_sympy
from src.groups.perm_group import PermutationGroup
from src.groups.permutation import Permutation, evaluate_word

logger = logging.getLogger(__name__)

UNDEFINED = -1


@dataclass(frozen=True)
class QuotientRecord:
    """
    Attributes:
        index (int): Order of the quotient.
        generator_images (tuple[Permutation, ...]): Images of the generators
            in the regular action of the quotient on itself.
        presentation (FpPresentation): The presentation being quotiented.
    """
    index: int
    generator_images: tuple[Permutation, ...]
    presentation: FpPresentation

    def sort_key(self) -> tuple:
        return (self.index, tuple(tuple(p.tolist()) for p in self.generator_images))

    def image_group(self) -> PermutationGroup:
        return PermutationGroup(list(self.generator_images), self.index)


def _letters(word: Word) -> tuple[int, ...]:
    return tuple(2 * gen + (0 if exp > 0 else 1) for gen, exp in word)


class _RegularTableSearch:
    """
    Depth-first construction of the standardized regular coset tables of
    index k. Slot (p, l) holds the image of point p under letter l, where
    letter 2i is generator i and 2i+1 its inverse.
    """
    def __init__(self, P: FpPresentation, k: int, node_budget: int):
        self.P = P
        self.k = k
        self.node_budget = node_budget
        self.nodes = 0
        self.width = 2 * P.rank
        # shunt (last generator) first; the conjugation relators then pin the involutions
        gens = [P.rank - 1] + list(range(P.rank - 1)) if P.rank else []
        self.letter_order = [2 * g + e for g in gens for e in (0, 1)]

        relators = [cyclic_reduce(r) for r in P.relators]
        words: set[tuple[int, ...]] = set()
        for rel in relators:
            if rel:
                words.update(_letters(w) for w in cyclic_conjugates(rel))
        self.scan_words = sorted(words)
        self.relator_letters = [_letters(r) for r in relators if r]

        self.table = [[UNDEFINED] * self.width for _ in range(k)]
        self.forward = [[UNDEFINED] * k for _ in range(k)]
        self.backward = [[UNDEFINED] * k for _ in range(k)]
        self.count = 1
        self.trail: list[tuple] = []
        self.queue: list[tuple] = []
        self.results: list[tuple[tuple[int, ...], ...]] = []

    # --- elementary changes ---

    def _define(self, p: int, l: int, q: int) -> bool:
        table = self.table
        current = table[p][l]
        if current == q:
            return True
        if current != UNDEFINED:
            return False
        il = l ^ 1
        back = table[q][il]
        if back != UNDEFINED and back != p:
            return False
        table[p][l] = q
        self.trail.append(('T', p, l))
        if back == UNDEFINED:
            table[q][il] = p
            self.trail.append(('T', q, il))
        self.queue.append(('T', p, l, q))
        self.queue.append(('T', q, il, p))
        return True

    def _map(self, r: int, p: int, q: int) -> bool:
        forward, backward = self.forward[r], self.backward[r]
        current = forward[p]
        if current == q:
            return True
        if current != UNDEFINED or backward[q] != UNDEFINED:
            return False
        forward[p] = q
        backward[q] = p
        self.trail.append(('L', r, p))
        self.queue.append(('L', r, p))
        return True

    def _undo(self, mark: int) -> None:
        trail = self.trail
        while len(trail) > mark:
            entry = trail.pop()
            if entry[0] == 'T':
                self.table[entry[1]][entry[2]] = UNDEFINED
            else:
                _, r, p = entry
                q = self.forward[r][p]
                self.forward[r][p] = UNDEFINED
                self.backward[r][q] = UNDEFINED

    # --- propagation ---

    def _edge(self, u: int, l: int, v: int) -> bool:
        table = self.table
        for r in range(1, self.count):
            forward, backward = self.forward[r], self.backward[r]
            a = forward[u]
            if a != UNDEFINED:
                t = table[a][l]
                if t != UNDEFINED:
                    if not self._map(r, v, t):
                        return False
                elif forward[v] != UNDEFINED and not self._define(a, l, forward[v]):
                    return False
            u0 = backward[u]
            if u0 != UNDEFINED:
                t0 = table[u0][l]
                if t0 != UNDEFINED:
                    if not self._map(r, t0, v):
                        return False
                elif backward[v] != UNDEFINED and not self._define(u0, l, backward[v]):
                    return False
        return True

    def _extend_map(self, r: int, p: int) -> bool:
        table = self.table
        forward, backward = self.forward[r], self.backward[r]
        q = forward[p]
        for l in range(self.width):
            t, t2 = table[p][l], table[q][l]
            if t != UNDEFINED:
                if t2 != UNDEFINED:
                    if not self._map(r, t, t2):
                        return False
                elif forward[t] != UNDEFINED and not self._define(q, l, forward[t]):
                    return False
            elif t2 != UNDEFINED and backward[t2] != UNDEFINED:
                if not self._define(p, l, backward[t2]):
                    return False
        return True

    def _scan_base_point(self) -> bool | None:
        """Scans every relator rotation at point 0; None on a contradiction."""
        table = self.table
        deduced = False
        for word in self.scan_words:
            f, i, n = 0, 0, len(word)
            while i < n and table[f][word[i]] != UNDEFINED:
                f = table[f][word[i]]
                i += 1
            if i == n:
                if f != 0:
                    return None
                continue
            b, j = 0, n - 1
            while j > i and table[b][word[j] ^ 1] != UNDEFINED:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j == i:
                if not self._define(f, word[i], b):
                    return None
                deduced = True
        return deduced

    def _propagate(self) -> bool:
        while True:
            while self.queue:
                event = self.queue.pop()
                if event[0] == 'T':
                    ok = self._edge(event[1], event[2], event[3])
                else:
                    ok = self._extend_map(event[1], event[2])
                if not ok:
                    self.queue.clear()
                    return False
            deduced = self._scan_base_point()
            if deduced is None:
                self.queue.clear()
                return False
            if not deduced and not self.queue:
                return True

    # --- search ---

    def _first_undefined(self, start: tuple[int, int]) -> tuple[int, int] | None:
        p0, i0 = start
        order = self.letter_order
        for p in range(p0, self.count):
            row = self.table[p]
            for i in range(i0 if p == p0 else 0, len(order)):
                if row[order[i]] == UNDEFINED:
                    return p, i
        return None

    def _closed_table_is_valid(self) -> bool:
        images = self._images()
        perms = [Permutation(img, check=False) for img in images]
        for rel in self.relator_letters:
            word = tuple((l >> 1, -1 if l & 1 else 1) for l in rel)
            if not evaluate_word(word, perms).is_identity():
                return False
        return PermutationGroup(perms, self.k).order() == self.k if perms else self.k == 1

    def _images(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(self.table[p][2 * g] for p in range(self.k)) for g in range(self.P.rank))

    def run(self) -> list[tuple[tuple[int, ...], ...]]:
        self.forward[0] = list(range(self.k))
        self.backward[0] = list(range(self.k))
        if not self._propagate():
            return []
        frames: list[list] = []
        slot = self._first_undefined((0, 0))
        while True:
            if slot is None:
                if self.count == self.k and self._closed_table_is_valid():
                    self.results.append(self._images())
            else:
                p, i = slot
                l = self.letter_order[i]
                options = [q for q in range(self.count) if self.table[q][l ^ 1] == UNDEFINED]
                if self.count < self.k:
                    options.append(self.count)
                frames.append([slot, options, 0, len(self.trail), self.count])
            slot = None
            while frames:
                frame = frames[-1]
                self._undo(frame[3])
                self.count = frame[4]
                if frame[2] == len(frame[1]):
                    frames.pop()
                    continue
                target = frame[1][frame[2]]
                frame[2] += 1
                self.nodes += 1
                if self.nodes > self.node_budget:
                    raise BudgetExceededError('QUOTIENT_DFS_NODES', self.node_budget,
                                              cell=f"({self.P}, index {self.k})")
                p, i = frame[0]
                l = self.letter_order[i]
                ok = True
                if target == self.count:
                    self.count += 1
                    ok = self._map(target, 0, target)
                ok = ok and self._define(p, l, target) and self._propagate()
                if ok:
                    slot = self._first_undefined(frame[0])
                    break
            else:
                return self.results


def normal_quotients_of_index(P: FpPresentation, k: int, node_budget: int | None = None) -> list[QuotientRecord]:
    """
    All normal subgroups of index exactly k, as regular quotient actions.

    Raises:
        BudgetExceededError: The search for this (presentation, index) cell
            visited more than ``node_budget`` nodes.
    """
    if k < 1:
        raise PreconditionError("index must be positive")
    budget = BUDGETS['QUOTIENT_DFS_NODES'] if node_budget is None else node_budget
    search = _RegularTableSearch(P, k, budget)
    tables = search.run()
    records = [
        QuotientRecord(k, tuple(Permutation(img, check=False) for img in images), P)
        for images in tables
    ]
    logger.debug("Index %d of %s: %d normal subgroups, %d nodes", k, P, len(records), search.nodes)
    return sorted(records, key=QuotientRecord.sort_key)


def low_index_normal_quotients(P: FpPresentation, max_index: int, node_budget: int | None = None) -> list[QuotientRecord]:
    """One record per normal subgroup of index at most ``max_index``."""
    cap = BUDGETS['QUOTIENT_MAX_INDEX']
    if max_index > cap:
        raise BudgetExceededError('QUOTIENT_MAX_INDEX', cap, cell=f"({P}, index {max_index})")
    records = []
    for k in range(1, max_index + 1):
        records.extend(normal_quotients_of_index(P, k, node_budget))
    return records


def classic_normal_quotients(P: FpPresentation, max_index: int) -> list[QuotientRecord]:
    """
    Normal quotients found by generic low-index subgroup enumeration and a
    normality filter. Much slower; used to cross-check the regular search.
    """
    _, _, group, _ = to_sympy(P)
    records = []
    for C in low_index_subgroups(group, max_index):
        table = table_from_sympy(C, P.rank)
        perms = table.actions
        image_order = PermutationGroup(perms, table.index).order() if perms else 1
        if image_order == table.index:
            records.append(QuotientRecord(table.index, tuple(perms), P))
    return sorted(records, key=QuotientRecord.sort_key)


# --- epimorphisms onto a given finite group ---

@dataclass(frozen=True)
class Epimorphism:
    """
    Attributes:
        images (tuple[Permutation, ...]): Generator images in K.
        kernel_index (int): |P : kernel|, which equals |K|.
    """
    images: tuple[Permutation, ...]
    kernel_index: int


def _cayley_key(images: Sequence[Permutation], degree: int) -> tuple:
    """Standardized Cayley table of the generated group; equal keys mean equal kernels."""
    identity = Permutation.identity(degree)
    elements = [identity]
    position = {identity: 0}
    rows = []
    for x in elements:
        row = []
        for gen in images:
            y = x * gen
            if y not in position:
                position[y] = len(elements)
                elements.append(y)
            row.append(position[y])
        rows.append(tuple(row))
    return tuple(rows)


def _power_constraints(P: FpPresentation) -> dict[int, int]:
    """Generator -> exponent k for every relator of the form x^k."""
    bounds: dict[int, int] = {}
    for rel in P.relators:
        gens = {gen for gen, _ in rel}
        if len(gens) == 1:
            (gen,) = gens
            k = abs(sum(exp for _, exp in rel))
            bounds[gen] = k if gen not in bounds else math.gcd(bounds[gen], k)
    return bounds


def _evaluate(word: Sequence, assigned: dict[int, Permutation], rank: int, degree: int) -> Permutation:
    identity = Permutation.identity(degree)
    return evaluate_word(word, [assigned.get(i, identity) for i in range(rank)])


def _solve_for(rel: Word, gen: int, assigned: dict[int, Permutation], rank: int, degree: int) -> Permutation:
    """The value of ``gen`` forced by ``rel = 1`` when ``gen`` occurs exactly once."""
    pos = next(i for i, (g, _) in enumerate(rel) if g == gen)
    before = _evaluate(rel[:pos], assigned, rank, degree)
    after = _evaluate(rel[pos + 1:], assigned, rank, degree)
    value = before.inverse() * after.inverse()
    return value if rel[pos][1] > 0 else value.inverse()


def quotient_search_in_group(P: FpPresentation, K: PermutationGroup, cap: int | None = None) -> list[Epimorphism]:
    """
    All epimorphisms from P onto K, one per kernel.

    Generators are assigned by backtracking over the elements of K; a
    generator occurring exactly once in a relator whose other letters are
    assigned is solved for instead of enumerated.

    Raises:
        BudgetExceededError: |K| exceeds ``cap``.
    """
    cap = BUDGETS['GROUP_ENUMERATION_CAP'] if cap is None else cap
    order = K.order()
    if order > cap:
        raise BudgetExceededError('GROUP_ENUMERATION_CAP', cap, cell=f"|K| = {order}")
    degree = K.degree
    elements = list(K.elements())
    bounds = _power_constraints(P)
    candidates = {
        gen: [x for x in elements if gen not in bounds or bounds[gen] % x.order() == 0]
        for gen in range(P.rank)
    }
    branch_order = [0, P.rank - 1] + list(range(1, P.rank - 1)) if P.rank > 1 else list(range(P.rank))
    relators = [r for r in P.relators if r]
    found: dict[tuple, Epimorphism] = {}

    def deduce(assigned: dict[int, Permutation]) -> dict[int, Permutation] | None:
        assigned = dict(assigned)
        progress = True
        while progress:
            progress = False
            for rel in relators:
                missing = {g for g, _ in rel if g not in assigned}
                if not missing:
                    if not _evaluate(rel, assigned, P.rank, degree).is_identity():
                        return None
                    continue
                if len(missing) == 1:
                    (gen,) = missing
                    if sum(1 for g, _ in rel if g == gen) == 1:
                        value = _solve_for(rel, gen, assigned, P.rank, degree)
                        if gen in bounds and bounds[gen] % value.order() != 0:
                            return None
                        assigned[gen] = value
                        progress = True
        return assigned

    def backtrack(assigned: dict[int, Permutation]) -> None:
        assigned = deduce(assigned)
        if assigned is None:
            return
        free = [gen for gen in branch_order if gen not in assigned]
        if not free:
            images = tuple(assigned[i] for i in range(P.rank))
            if PermutationGroup(list(images), degree).order() != order:
                return
            key = _cayley_key(images, degree)
            if key not in found:
                found[key] = Epimorphism(images, order)
            return
        gen = free[0]
        for x in candidates[gen]:
            backtrack({**assigned, gen: x})

    backtrack({})
    result = sorted(found.values(), key=lambda e: tuple(tuple(p.tolist()) for p in e.images))
    logger.debug("Epimorphisms of %s onto a group of order %d: %d kernels", P, order, len(result))
    return result
