"""
This module calculates the census fields of 2-ATDs and of their underlying
4-valent graphs, one record dictionary per object, keyed by CSV column.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Any, Sequence

from src.config import CENSUS_DEFAULTS
from src.digraphs.constructions import GwParams, generalised_wreath
from src.digraphs.digraph import Digraph, girth_and_bipartite, opposite, underlying_graph
from src.errors import PreconditionError
from src.invariants.alternating import AttachmentType, alter_invariants, alternating_cycles
from src.invariants.consistent import consistent_cycles, cycle_length_bounds
from src.symmetry.automorphisms import automorphism_group, canonical_form
from src.symmetry.classify import (GraphClass, cayley_type, classify_graph, is_cayley, max_s_arc_transitivity,
                                   maximal_hat_stab_orders, stabiliser_report)

logger = logging.getLogger(__name__)

ATD_COLUMNS = ['Name', '|V|', 'SelfOpp', 'Opp', 'IsUndAT', 'UndGrph', 's', 'GvAb', '|Tv:Gv|', '|Av:Gv|',
               'Solv', 'Rad', 'AtNo', 'AtTy', '|AltCyc|', 'AltExp', 'AltPer', 'AltSeq', 'IsGWD']
GHAT_COLUMNS = ['Name', '|V|', 'gir', 'bip', 'CayTy', '|Av|', '|Gv|', 'solv', '[|ConCyc|]']
HAT_COLUMNS = ['Name', '|V|', 'gir', 'bip', 'IsCay', '|Gv|', 'Solv', 'Rad', 'AtNo', 'AtTy', 'AltExp', 'AltPer',
               'AltSeq', 'CCa', 'CCb', 'MetaCircTy']

UNKNOWN = '?'


def _yes_no(flag: bool) -> str:
    return 'yes' if flag else 'no'


def _solv(flag: bool) -> str:
    return 'solv' if flag else 'n-solv'


def _attachment_label(kind: AttachmentType) -> str:
    return '---' if kind is AttachmentType.OTHER else kind.value


def recognise_generalised_wreath(D: Digraph, max_order: int | None = None) -> GwParams | None:
    """
    (n, r) with D isomorphic to W(n, r), or None.

    Candidates are the arc-transitive (n, r) with n * 2^r = |V(D)| whose
    automorphism group order n * 2^n matches; the survivors are compared by
    canonical form.
    """
    max_order = CENSUS_DEFAULTS['GW_RECOGNITION_MAX_ORDER'] if max_order is None else max_order
    if D.n > max_order:
        raise PreconditionError(f"GW recognition is limited to {max_order} vertices")
    aut_order = automorphism_group(D).order()
    cert = canonical_form(D).bytes
    r = 1
    while 2 ** r <= D.n:
        n, rem = divmod(D.n, 2 ** r)
        params = GwParams(n, r)
        if not rem and n >= 3 and params.arc_transitive and n * 2 ** n == aut_order:
            if canonical_form(generalised_wreath(n, r)).bytes == cert:
                return params
        r += 1
    return None


@dataclass
class NameBook:
    """
    Census names by canonical certificate.

    Attributes:
        digraphs (dict[bytes, str]): Digraph certificate -> ATD or GWD name.
        graphs (dict[bytes, str]): Underlying graph certificate -> GHAT, HAT
            or GWD name.
        gw (dict[bytes, GwParams]): Digraph certificate -> GW parameters.
    """
    digraphs: dict[bytes, str] = field(default_factory=dict)
    graphs: dict[bytes, str] = field(default_factory=dict)
    gw: dict[bytes, GwParams] = field(default_factory=dict)

    def digraph_name(self, D: Digraph) -> str:
        return self.digraphs.get(canonical_form(D).bytes, UNKNOWN)

    def graph_name(self, U: Digraph) -> str:
        return self.graphs.get(canonical_form(U).bytes, UNKNOWN)


class RecordCalculator:
    """
    Calculates the 19 census fields of a single 2-ATD.
    """
    def __init__(self, D: Digraph, names: NameBook, s_cap: int | None = None):
        self.D = D
        self.names = names
        self.s_cap = CENSUS_DEFAULTS['S_CAP'] if s_cap is None else s_cap

    def calculate_atd_record(self) -> dict[str, Any]:
        D = self.D
        cert = canonical_form(D).bytes
        name = self.names.digraphs.get(cert, UNKNOWN)
        U = underlying_graph(D)
        report = stabiliser_report(D)
        G = automorphism_group(D)
        self_opp = canonical_form(opposite(D)).bytes == cert
        level = max_s_arc_transitivity(D, G, self.s_cap)
        alternating = alternating_cycles(D)
        alter = alter_invariants(D)
        if level.saturated:
            s = report.stab_order.bit_length() - 1
        else:
            s = level.level
            assert 2 ** s == report.stab_order, "|G_v| = 2^s fails"

        return {
            'Name': name,
            '|V|': D.n,
            'SelfOpp': _yes_no(self_opp),
            'Opp': name if self_opp else self.names.digraph_name(opposite(D)),
            'IsUndAT': _yes_no(report.index_to_smallest_at_overgroup > 0),
            'UndGrph': self.names.graph_name(U),
            's': s,
            'GvAb': 'Ab' if report.stab_abelian else 'n-Ab',
            '|Tv:Gv|': report.index_to_smallest_at_overgroup,
            '|Av:Gv|': report.index_in_graph_aut,
            'Solv': _solv(report.aut_solvable),
            'Rad': alternating.radius,
            'AtNo': alternating.attachment,
            'AtTy': _attachment_label(alternating.attachment_type),
            '|AltCyc|': alternating.cycle_count,
            'AltExp': alter.exponent,
            'AltPer': alter.perimeter,
            'AltSeq': alter.sequence,
            'IsGWD': _yes_no(cert in self.names.gw),
        }


class GraphRecordCalculator:
    """
    Calculates the GHAT or HAT fields of a 4-valent graph from the family of
    census 2-ATDs whose underlying graph it is.

    Args:
        family (Sequence[Digraph]): The census orientations of the graph.
        name (str): The graph's census name.
        complete (bool): Whether the family is known to hold every orientation.
    """
    def __init__(self, family: Sequence[Digraph], name: str, complete: bool = True):
        if not family:
            raise PreconditionError("a graph record needs at least one orientation")
        self.family = list(family)
        self.name = name
        self.complete = complete
        self.graph = underlying_graph(self.family[0])

    def graph_class(self) -> GraphClass:
        return classify_graph(self.graph)

    def _common_fields(self) -> dict[str, Any]:
        girth, bipartite = girth_and_bipartite(self.graph)
        return {
            'Name': self.name,
            '|V|': self.graph.n,
            'gir': girth,
            'bip': 'b' if bipartite else 'nb',
        }

    def calculate_ghat_record(self) -> dict[str, Any]:
        A = automorphism_group(self.graph)
        orbits = consistent_cycles(self.graph, A)
        stab_orders = maximal_hat_stab_orders(self.family, complete=self.complete)
        if not stab_orders.complete:
            logger.debug("Maximal HAT stabilisers of %s come from an incomplete family", self.name)
        return {
            **self._common_fields(),
            'CayTy': cayley_type(self.graph).value,
            '|Av|': A.order() // self.graph.n,
            '|Gv|': stab_orders.orders,
            'solv': _solv(A.is_solvable()),
            '[|ConCyc|]': [o.marker for o in orbits],
        }

    def calculate_hat_record(self) -> dict[str, Any]:
        A = automorphism_group(self.graph)
        D = self.family[0]
        alternating = alternating_cycles(D)
        alter = alter_invariants(D)
        shortest, longest = cycle_length_bounds(consistent_cycles(self.graph, A))
        tight = alternating.attachment_type is AttachmentType.TIGHT
        return {
            **self._common_fields(),
            'IsCay': is_cayley(self.graph).value,
            '|Gv|': A.order() // self.graph.n,
            'Solv': _solv(A.is_solvable()),
            'Rad': alternating.radius,
            'AtNo': alternating.attachment,
            'AtTy': _attachment_label(alternating.attachment_type),
            'AltExp': alter.exponent,
            'AltPer': alter.perimeter,
            'AltSeq': alter.sequence,
            'CCa': shortest,
            'CCb': longest,
            'MetaCircTy': '{I}' if tight else UNKNOWN,
        }
