"""
Permutations of {0, ..., n-1} stored as numpy image arrays.

Products follow the right-action convention: ``p * q`` applies ``p`` first,
so ``(p * q)(x) == q(p(x))``.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

import numpy as np

from src.errors import PreconditionError


class Permutation:
    """
    An immutable permutation.

    Args:
        images (Sequence[int]): ``images[x]`` is the image of point ``x``.
        check (bool): Verify bijectivity. Internal callers that build images
            by composing permutations pass ``False``.
    """
    __slots__ = ('images', '_hash')

    def __init__(self, images: Sequence[int] | np.ndarray, check: bool = True):
        arr = np.array(images, dtype=np.int64)
        if arr.ndim != 1:
            raise PreconditionError("permutation images must be one-dimensional")
        if check and len(arr):
            if arr.min() < 0 or arr.max() >= len(arr) or len(np.unique(arr)) != len(arr):
                raise PreconditionError(f"not a permutation of 0..{len(arr) - 1}: {list(images)}")
        arr.setflags(write=False)
        self.images = arr
        self._hash = None

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(np.arange(degree), check=False)

    @classmethod
    def from_cycles(cls, degree: int, *cycles: Iterable[int]) -> Permutation:
        """Builds a permutation from disjoint cycles, e.g. ``from_cycles(4, (0, 1, 2))``."""
        images = np.arange(degree)
        seen = set()
        for cycle in cycles:
            cycle = list(cycle)
            for k, point in enumerate(cycle):
                if point in seen or not 0 <= point < degree:
                    raise PreconditionError(f"invalid cycle {cycle} for degree {degree}")
                seen.add(point)
                images[point] = cycle[(k + 1) % len(cycle)]
        return cls(images, check=False)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return int(self.images[point])

    def __mul__(self, other: Permutation) -> Permutation:
        if other.degree != self.degree:
            raise PreconditionError(f"degree mismatch: {self.degree} vs {other.degree}")
        return Permutation(other.images[self.images], check=False)

    def inverse(self) -> Permutation:
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.degree)
        return Permutation(inv, check=False)

    def __pow__(self, k: int) -> Permutation:
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = np.arange(self.degree)
        square = base.images
        while k:
            if k & 1:
                result = square[result]
            square = square[square]
            k >>= 1
        return Permutation(result, check=False)

    def conjugate(self, g: Permutation) -> Permutation:
        """Returns ``g^-1 * self * g``."""
        return g.inverse() * self * g

    def commutator(self, other: Permutation) -> Permutation:
        """Returns ``[self, other] = self^-1 other^-1 self other``."""
        return self.inverse() * other.inverse() * self * other

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(self.degree)))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, each starting at its smallest point."""
        seen = np.zeros(self.degree, dtype=bool)
        result = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            nxt = int(self.images[start])
            while nxt != start:
                cycle.append(nxt)
                seen[nxt] = True
                nxt = int(self.images[nxt])
            if len(cycle) > 1:
                result.append(tuple(cycle))
        return result

    def cycle_type(self) -> list[int]:
        lengths = [len(c) for c in self.cycles()]
        return sorted(lengths + [1] * (self.degree - sum(lengths)))

    def order(self) -> int:
        return math.lcm(*self.cycle_type()) if self.degree else 1

    def support(self) -> list[int]:
        return np.flatnonzero(self.images != np.arange(self.degree)).tolist()

    def fixed_points(self) -> list[int]:
        return np.flatnonzero(self.images == np.arange(self.degree)).tolist()

    def tolist(self) -> list[int]:
        return self.images.tolist()

    def __eq__(self, other) -> bool:
        if not isinstance(other, Permutation):
            return NotImplemented
        return bool(np.array_equal(self.images, other.images))

    def __lt__(self, other: Permutation) -> bool:
        return self.tolist() < other.tolist()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.images.tobytes())
        return self._hash

    def __repr__(self) -> str:
        cycles = self.cycles()
        if not cycles:
            return f"Permutation(identity, degree={self.degree})"
        body = ''.join('(' + ' '.join(map(str, c)) + ')' for c in cycles)
        return f"Permutation({body}, degree={self.degree})"


def evaluate_word(word: Iterable[tuple[int, int]], images: Sequence[Permutation]) -> Permutation:
    """Evaluates a word of ``(generator index, +1/-1)`` letters at permutation images."""
    degree = images[0].degree
    result = np.arange(degree)
    inverses: dict[int, np.ndarray] = {}
    for gen, exp in word:
        if exp > 0:
            step = images[gen].images
        else:
            if gen not in inverses:
                inverses[gen] = images[gen].inverse().images
            step = inverses[gen]
        result = step[result]
    return Permutation(result, check=False)
