"""
This module applies the validity guards of the census to a table of quotient
candidates, keeping those that define a 2-ATD as a coset digraph.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import pandas as pd

from src.digraphs.constructions import coset_digraph_from_action, shunt_inverse_in_double_coset
from src.digraphs.digraph import Digraph
from src.groups.perm_group import CosetAction, PermutationGroup, coset_action
from src.groups.permutation import Permutation

logger = logging.getLogger(__name__)


@dataclass
class QuotientCandidate:
    """
    A finite quotient G of a universal group with H the image of
    <x_0, ..., x_{s-1}> and g the image of the shunt.

    Attributes:
        s (int): The arc-transitivity level of the presentation.
        group (PermutationGroup): G.
        subgroup (PermutationGroup): H.
        shunt (Permutation): g.
        provenance (str): Where the quotient came from.
    """
    s: int
    group: PermutationGroup
    subgroup: PermutationGroup
    shunt: Permutation
    provenance: str
    cell: tuple = field(default=())

    @classmethod
    def from_images(cls, s: int, images: tuple[Permutation, ...], provenance: str, cell: tuple = ()) -> QuotientCandidate:
        """Images are ordered x_0, ..., x_{s-1}, g."""
        degree = images[0].degree
        return cls(
            s=s,
            group=PermutationGroup(list(images), degree),
            subgroup=PermutationGroup(list(images[:s]), degree),
            shunt=images[s],
            provenance=provenance,
            cell=cell,
        )

    @cached_property
    def action(self) -> CosetAction:
        return coset_action(self.group, self.subgroup)

    def digraph(self) -> Digraph:
        return coset_digraph_from_action(self.action, self.shunt)[0]


class CandidateScreener:
    """
    Filters quotient candidates by the three census guards.
    """
    def __init__(self, candidates: list[QuotientCandidate], label: str = ''):
        self.candidates_df = pd.DataFrame({'candidate': candidates})
        self.label = label

    def run_screen(self) -> list[QuotientCandidate]:
        """
        Applies all guards in order of increasing cost.

        Returns:
            list[QuotientCandidate]: Candidates passing every guard.
        """
        logger.debug("--- Screening %d candidates %s ---", len(self.candidates_df), self.label)
        screened_df = self.candidates_df

        # |H| = 2^s
        screened_df = self._apply_filter(screened_df, 'stabiliser order',
                                         lambda c: c.subgroup.order() == 2 ** c.s)

        # H is core-free
        screened_df = self._apply_filter(screened_df, 'core-free',
                                         lambda c: PermutationGroup(c.action.generator_images(), c.action.index).order()
                                         == c.group.order())

        # g^-1 outside HgH
        screened_df = self._apply_filter(screened_df, 'asymmetric shunt',
                                         lambda c: not shunt_inverse_in_double_coset(c.action, c.shunt))

        return list(screened_df['candidate'])

    def _apply_filter(self, df: pd.DataFrame, guard: str, condition: Callable[[QuotientCandidate], bool]) -> pd.DataFrame:
        """
        Helper function to apply a single guard and log the results.
        """
        initial_count = len(df)
        if initial_count == 0:
            return df
        passed = df['candidate'].map(condition).astype(bool)
        filtered_df = df.loc[passed]
        final_count = len(filtered_df)

        logger.debug("  - Filtering by '%s': %d -> %d candidates passed.", guard, initial_count, final_count)
        return filtered_df
