"""
Finitely presented groups: words, a presentation parser, the universal
groups of 2-ATDs and Todd-Coxeter coset enumeration.
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Sequence

from sympy.combinatorics.coset_table import coset_enumeration_r
from sympy.combinatorics.fp_groups import FpGroup
from sympy.combinatorics.free_groups import free_group

from src.config import BUDGETS, CENSUS_DEFAULTS
from src.errors import BudgetExceededError, PreconditionError, PresentationSyntaxError
from src.groups.permutation import Permutation

logger = logging.getLogger(__name__)

Letter = tuple[int, int]
Word = tuple[Letter, ...]

TABLE_NAMES = 'abcde'


# --- words ---

def free_reduce(word: Sequence[Letter]) -> Word:
    stack: list[Letter] = []
    for gen, exp in word:
        if stack and stack[-1] == (gen, -exp):
            stack.pop()
        else:
            stack.append((gen, exp))
    return tuple(stack)


def cyclic_reduce(word: Sequence[Letter]) -> Word:
    word = list(free_reduce(word))
    while len(word) > 1 and word[0] == (word[-1][0], -word[-1][1]):
        word = word[1:-1]
    return tuple(word)


def invert(word: Sequence[Letter]) -> Word:
    return tuple((gen, -exp) for gen, exp in reversed(word))


def power(word: Sequence[Letter], k: int) -> Word:
    base = tuple(word) if k >= 0 else invert(word)
    return free_reduce(base * abs(k))


def conjugate(word: Sequence[Letter], by: Sequence[Letter]) -> Word:
    """``word^by = by^-1 word by``."""
    return free_reduce(invert(by) + tuple(word) + tuple(by))


def commutator(u: Sequence[Letter], v: Sequence[Letter]) -> Word:
    """``[u, v] = u^-1 v^-1 u v``."""
    return free_reduce(invert(u) + invert(v) + tuple(u) + tuple(v))


def cyclic_conjugates(word: Sequence[Letter]) -> list[Word]:
    word = tuple(word)
    return [word[i:] + word[:i] for i in range(len(word))]


@dataclass(frozen=True)
class FpPresentation:
    """
    Attributes:
        generator_names (tuple[str, ...]): Generator names, in index order.
        relators (tuple[Word, ...]): Freely reduced relator words.
    """
    generator_names: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        for rel in self.relators:
            for gen, _ in rel:
                if not 0 <= gen < len(self.generator_names):
                    raise PreconditionError(f"relator references undeclared generator index {gen}")

    @property
    def rank(self) -> int:
        return len(self.generator_names)

    def with_relators(self, extra: Sequence[Word]) -> FpPresentation:
        relators = list(self.relators)
        for rel in extra:
            rel = free_reduce(rel)
            if rel and rel not in relators:
                relators.append(rel)
        return FpPresentation(self.generator_names, tuple(relators))

    def format_word(self, word: Sequence[Letter]) -> str:
        parts = []
        for (gen, exp), group in itertools.groupby(word):
            count = len(list(group)) * exp
            name = self.generator_names[gen]
            parts.append(name if count == 1 else f"{name}^{count}")
        return ' '.join(parts) if parts else '1'

    def __str__(self) -> str:
        rels = ', '.join(self.format_word(r) for r in self.relators)
        return f"{','.join(self.generator_names)} | {rels}"


# --- parser ---

class _PresentationParser:
    """
    Recursive-descent parser for ``gens | rel, rel, ...``.

    relator := factor*          (juxtaposition or '*')
    factor  := atom ('^' (int | '-' int | atom))*
    atom    := name | '(' relator ')' | '[' relator ',' relator ']' | '1'
    """
    def __init__(self, text: str, names: list[str], offset: int):
        self.text = text
        self.names = sorted(names, key=len, reverse=True)
        self.index = {name: i for i, name in enumerate(names)}
        self.pos = offset

    def error(self, message: str):
        raise PresentationSyntaxError(message, self.pos)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ''

    def expect(self, char: str):
        if self.peek() != char:
            self.error(f"expected '{char}'")
        self.pos += 1

    def relators(self) -> list[Word]:
        result = []
        while True:
            result.append(self.product())
            if self.peek() == ',':
                self.pos += 1
                continue
            if self.peek():
                self.error(f"unexpected '{self.peek()}'")
            return result

    def product(self) -> Word:
        word: Word = ()
        while True:
            char = self.peek()
            if char == '*':
                self.pos += 1
                continue
            if not char or char in ',])':
                return free_reduce(word)
            word = word + self.factor()

    def factor(self) -> Word:
        word = self.atom()
        while self.peek() == '^':
            self.pos += 1
            self.skip()
            sign = 1
            if self.peek() == '-':
                sign = -1
                self.pos += 1
                self.skip()
            if self.peek().isdigit():
                start = self.pos
                while self.pos < len(self.text) and self.text[self.pos].isdigit():
                    self.pos += 1
                word = power(word, sign * int(self.text[start:self.pos]))
            elif sign < 0:
                self.error("expected an integer exponent")
            else:
                word = conjugate(word, self.atom())
        return word

    def atom(self) -> Word:
        char = self.peek()
        if char == '(':
            self.pos += 1
            word = self.product()
            self.expect(')')
            return word
        if char == '[':
            self.pos += 1
            u = self.product()
            self.expect(',')
            v = self.product()
            self.expect(']')
            return commutator(u, v)
        if char == '1':
            self.pos += 1
            return ()
        for name in self.names:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                return ((self.index[name], 1),)
        if char.isalpha() or char == '_':
            self.error(f"undeclared generator '{char}'")
        self.error(f"unexpected '{char}'" if char else "unexpected end of input")


def parse_presentation(text: str) -> FpPresentation:
    """
    Parses ``a,b,g | a^2, b^2, a^g b, [a,b]`` into a presentation.

    Relators are freely reduced and duplicates are dropped.
    """
    if '|' not in text:
        raise PresentationSyntaxError("missing '|' between generators and relators", 0)
    head, _ = text.split('|', 1)
    names = [name.strip() for name in head.split(',')]
    if not names or any(not name.isidentifier() for name in names):
        raise PresentationSyntaxError("generator names must be identifiers", 0)
    if len(set(names)) != len(names):
        raise PresentationSyntaxError("duplicate generator name", 0)
    parser = _PresentationParser(text, names, len(head) + 1)
    relators: list[Word] = []
    if parser.peek():
        for rel in parser.relators():
            if rel and rel not in relators:
                relators.append(rel)
    return FpPresentation(tuple(names), tuple(relators))


# --- universal groups ---

@dataclass(frozen=True)
class UniversalType:
    """
    Attributes:
        s (int): Arc-transitivity level, |x_0 .. x_{s-1}| = 2^s.
        alpha (int): Commutation depth, ceil(2s/3) <= alpha <= s.
        c (tuple[tuple[int, ...], ...]): One bit row per j = alpha .. s-1;
            row j has 2*alpha - 2s + j + 1 entries c_{1,j} ...
        name (str | None): Catalogue label such as ``A_3^2``.
    """
    s: int
    alpha: int
    c: tuple[tuple[int, ...], ...] = ()
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.s < 1:
            raise PreconditionError("s must be at least 1")
        if not math.ceil(2 * self.s / 3) <= self.alpha <= self.s:
            raise PreconditionError(f"alpha={self.alpha} outside [ceil(2s/3), s] for s={self.s}")
        if len(self.c) != self.s - self.alpha:
            raise PreconditionError(f"expected {self.s - self.alpha} bit rows, got {len(self.c)}")
        for j, row in zip(range(self.alpha, self.s), self.c):
            if len(row) != self.row_length(j) or any(bit not in (0, 1) for bit in row):
                raise PreconditionError(f"bit row for j={j} must have {self.row_length(j)} entries in {{0,1}}")

    def row_length(self, j: int) -> int:
        return 2 * self.alpha - 2 * self.s + j + 1

    def row_key(self) -> tuple[int, ...]:
        """Rows read as binary numbers with c_{1,j} least significant."""
        return tuple(sum(bit << i for i, bit in enumerate(row)) for row in self.c)


def generator_names(s: int) -> tuple[str, ...]:
    letters = TABLE_NAMES[:s] if s <= len(TABLE_NAMES) else tuple(f"x{i}" for i in range(s))
    return tuple(letters) + ('g',)


def universal_group(t: UniversalType) -> FpPresentation:
    """
    The universal group for type t.

    Relators are emitted in the table form: every x_i^2, then
    ``x_i^g x_{i+1}``, then ``[x_0, x_j]`` followed for j >= alpha by the
    product of ``x_{s-alpha+i-1}`` over the set bits c_{i,j}. As the x_i are
    involutions and the tail factors commute, this presents the same group as
    ``x_i^g = x_{i+1}`` and ``[x_0, x_j] = x_{s-alpha}^{c_{1,j}} ...``.
    """
    s, alpha = t.s, t.alpha
    shunt = ((s, 1),)
    x = [((i, 1),) for i in range(s)]
    relators: list[Word] = [power(x[i], 2) for i in range(s)]
    relators += [free_reduce(conjugate(x[i], shunt) + x[i + 1]) for i in range(s - 1)]
    for j in range(1, s):
        rel = commutator(x[0], x[j])
        if j >= alpha:
            row = t.c[j - alpha]
            tail = tuple(letter for i, bit in enumerate(row) if bit for letter in x[s - alpha + i])
            rel = free_reduce(rel + tail)
        relators.append(rel)
    return FpPresentation(generator_names(s), tuple(relators))


def reverse_type(t: UniversalType) -> UniversalType:
    return UniversalType(t.s, t.alpha, tuple(tuple(reversed(row)) for row in t.c))


def reduced_types(s: int) -> list[UniversalType]:
    """
    One type per {c, c'} pair, larger alpha first, named A_s^1, A_s^2, ...

    Of each pair the type whose bit rows read as smaller binary numbers (with
    c_{1,j} least significant) is kept; types presenting a group already
    listed are dropped.
    """
    chosen: list[UniversalType] = []
    seen_relators: set[frozenset[Word]] = set()
    for alpha in range(s, math.ceil(2 * s / 3) - 1, -1):
        shapes = [2 * alpha - 2 * s + j + 1 for j in range(alpha, s)]
        candidates = []
        for rows in itertools.product(*[itertools.product((0, 1), repeat=k) for k in shapes]):
            t = UniversalType(s, alpha, tuple(rows))
            if t.row_key() <= reverse_type(t).row_key():
                candidates.append(t)
        for t in sorted(candidates, key=UniversalType.row_key):
            key = frozenset(universal_group(t).relators)
            if key in seen_relators:
                continue
            seen_relators.add(key)
            chosen.append(t)
    return [UniversalType(t.s, t.alpha, t.c, name=f"A_{s}^{i}") for i, t in enumerate(chosen, start=1)]


def universal_catalogue(s_max: int) -> list[tuple[UniversalType, FpPresentation]]:
    if not 1 <= s_max <= CENSUS_DEFAULTS['MAX_TABLE_S']:
        raise PreconditionError(f"s_max must lie in 1..{CENSUS_DEFAULTS['MAX_TABLE_S']}")
    return [(t, universal_group(t)) for s in range(1, s_max + 1) for t in reduced_types(s)]


# --- coset enumeration ---

@dataclass
class CosetTable:
    """
    Attributes:
        index (int): Number of cosets.
        actions (list[Permutation]): Action of each generator on the cosets.
    """
    index: int
    actions: list[Permutation]


def to_sympy(P: FpPresentation):
    """Returns the sympy free group, its generators and the FpGroup of P."""
    free, *gens = free_group(', '.join(P.generator_names))

    def convert(word: Sequence[Letter]):
        element = free.identity
        for gen, exp in word:
            element = element * gens[gen] ** exp
        return element

    return free, gens, FpGroup(free, [convert(r) for r in P.relators if r]), convert


def table_from_sympy(C, rank: int) -> CosetTable:
    C.compress()
    C.standardize()
    live = list(C.omega)
    position = {c: i for i, c in enumerate(live)}
    actions = [
        Permutation([position[C.table[c][2 * k]] for c in live])
        for k in range(rank)
    ]
    return CosetTable(len(live), actions)


def todd_coxeter(P: FpPresentation, subgroup_gens: Sequence[Word], coset_cap: int | None = None) -> CosetTable:
    """
    Enumerates the cosets of the subgroup generated by ``subgroup_gens``.

    Raises:
        BudgetExceededError: More than ``coset_cap`` cosets were defined.
    """
    coset_cap = BUDGETS['TODD_COXETER_COSETS'] if coset_cap is None else coset_cap
    if coset_cap < 1:
        raise PreconditionError("coset_cap must be positive")
    _, _, group, convert = to_sympy(P)
    try:
        C = coset_enumeration_r(group, [convert(w) for w in subgroup_gens], max_cosets=coset_cap)
    except ValueError as exc:
        raise BudgetExceededError('TODD_COXETER_COSETS', coset_cap, cell=str(P)) from exc
    table = table_from_sympy(C, P.rank)
    logger.debug("Todd-Coxeter over %s: %d cosets", P, table.index)
    return table
