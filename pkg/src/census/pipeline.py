"""
This module runs the census of 2-ATDs up to a given order.

The generalised wreath digraphs are seeded first. Then, for every level s and
every reduced universal type, the normal quotients of each admissible index
are screened into coset digraphs, and new isomorphism classes are added
together with their opposites. The work units ("cells") are independent and
are merged in a fixed order, so the output does not depend on ``jobs``.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Callable, Sequence

import pandas as pd
from tqdm import tqdm

from src.census.records import (ATD_COLUMNS, GHAT_COLUMNS, HAT_COLUMNS, GraphRecordCalculator, NameBook,
                                RecordCalculator, recognise_generalised_wreath)
from src.census.screener import CandidateScreener, QuotientCandidate
from src.config import BUDGETS, CENSUS_DEFAULTS
from src.digraphs.constructions import GwParams, gw_catalogue
from src.digraphs.digraph import Digraph, opposite, underlying_graph
from src.errors import PreconditionError
from src.groups.fp_group import UniversalType, power, reduced_types, universal_group
from src.groups.perm_group import PermutationGroup
from src.groups.quotients import normal_quotients_of_index, quotient_search_in_group
from src.symmetry.automorphisms import automorphism_group, canonical_form
from src.symmetry.classify import GraphClass, atd_defects, classify_graph

logger = logging.getLogger(__name__)

COMPLETE = 'complete'
CAPPED = 'capped'


def default_s_range(m: int) -> tuple[int, ...]:
    """1 .. max(4, t) for t the largest integer with m > t * 2^(t+2)."""
    t = 0
    while m > (t + 1) * 2 ** (t + 3):
        t += 1
    top = max(4, t)
    table_max = CENSUS_DEFAULTS['MAX_TABLE_S']
    if top > table_max:
        logger.warning("Levels above s=%d are not catalogued; the census is incomplete for m=%d", table_max, m)
        top = table_max
    return tuple(range(1, top + 1))


@dataclass
class CensusConfig:
    """
    Attributes:
        m (int): Largest digraph order.
        s_range (tuple[int, ...] | None): Levels to search; derived from m when None.
        index_cap (int): Largest quotient index searched; larger cells are
            reported as capped.
        jobs (int): Worker processes.
        include_gw (bool): Seed with the generalised wreath digraphs.
        gw_only (bool): Skip the quotient search.
        catalog (list[tuple[str, PermutationGroup]] | None): Search inside
            these groups instead of enumerating quotients.
        split_by_shunt_order (bool): Split every cell by the order of g.
        node_budget (int): Node budget per cell.
    """
    m: int
    s_range: tuple[int, ...] | None = None
    index_cap: int = BUDGETS['QUOTIENT_MAX_INDEX']
    jobs: int = CENSUS_DEFAULTS['JOBS']
    include_gw: bool = True
    gw_only: bool = False
    catalog: list[tuple[str, PermutationGroup]] | None = None
    split_by_shunt_order: bool = CENSUS_DEFAULTS['SPLIT_BY_SHUNT_ORDER']
    node_budget: int = BUDGETS['QUOTIENT_DFS_NODES']

    def __post_init__(self):
        if self.m < 1:
            raise PreconditionError("m must be positive")
        if self.s_range is None:
            self.s_range = default_s_range(self.m)
        self.s_range = tuple(sorted(set(self.s_range)))
        if any(not 1 <= s <= CENSUS_DEFAULTS['MAX_TABLE_S'] for s in self.s_range):
            raise PreconditionError(f"s values must lie in 1..{CENSUS_DEFAULTS['MAX_TABLE_S']}")
        if self.jobs < 1:
            raise PreconditionError("jobs must be positive")
        if self.m >= CENSUS_DEFAULTS['EXCEPTIONAL_ORDER']:
            logger.warning("m=%d reaches the exceptional order %d; the census cannot be complete",
                           self.m, CENSUS_DEFAULTS['EXCEPTIONAL_ORDER'])

    def index_bound(self, s: int) -> int:
        return 2 ** s * self.m


@dataclass(frozen=True, order=True)
class CellKey:
    """One unit of quotient search; ``shunt_order`` is 0 when the cell is not split."""
    s: int
    type_name: str
    index: int
    shunt_order: int = 0

    def __str__(self) -> str:
        suffix = f", |g| = {self.shunt_order}" if self.shunt_order else ''
        return f"(s={self.s}, {self.type_name}, index {self.index}{suffix})"


@dataclass
class CellResult:
    key: CellKey
    status: str
    candidates: int = 0
    found: list[tuple[bytes, Digraph]] = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.key.index // 2 ** self.key.s


@dataclass
class AtdEntry:
    """
    Attributes:
        digraph (Digraph): The 2-ATD.
        provenance (str): ``gw(n,r)``, ``quotient(...)`` or ``catalog(...)``.
        gw (GwParams | None): Set for seeded generalised wreath digraphs.
        name (str): Census name, assigned after the merge.
        record (dict[str, Any] | None): The ATD row, filled by ``emit_records``.
    """
    digraph: Digraph
    provenance: str
    gw: GwParams | None = None
    name: str = ''
    record: dict[str, Any] | None = None

    @cached_property
    def certificate(self) -> bytes:
        return canonical_form(self.digraph).bytes

    @property
    def order(self) -> int:
        return self.digraph.n


@dataclass
class CensusResult:
    entries: list[AtdEntry]
    cells: list[CellResult]
    config: CensusConfig
    names: NameBook = field(default_factory=NameBook)

    def complete_orders(self) -> list[int]:
        """Orders up to m for which every relevant cell was fully enumerated."""
        capped = [cell.order for cell in self.cells if cell.status != COMPLETE]
        if self.config.gw_only or self.config.catalog is not None:
            return []
        limit = min(capped) if capped else self.config.m + 1
        limit = min(limit, self.config.m + 1, CENSUS_DEFAULTS['EXCEPTIONAL_ORDER'])
        return list(range(1, limit))


# --- verification ---

def verify_2atd(D: Digraph) -> tuple[bool, list[str]]:
    """Whether D is a 2-ATD, with the failed conditions."""
    defects = atd_defects(D)
    return not defects, defects


# --- cells ---

def plan_cells(cfg: CensusConfig) -> list[CellKey]:
    """Every (s, type, index[, shunt order]) cell of the run, in merge order."""
    cells = []
    for s in cfg.s_range:
        for t in reduced_types(s):
            for n in range(1, cfg.m + 1):
                index = 2 ** s * n
                if not cfg.split_by_shunt_order:
                    cells.append(CellKey(s, t.name, index))
                    continue
                for o in range(1, n + 1):
                    if index % o == 0:
                        cells.append(CellKey(s, t.name, index, o))
    return sorted(cells)


@lru_cache(maxsize=None)
def _type_by_name(s: int, name: str) -> UniversalType:
    return next(t for t in reduced_types(s) if t.name == name)


def _screen_and_build(candidates: list[QuotientCandidate], label: str) -> list[tuple[bytes, Digraph]]:
    found: dict[bytes, Digraph] = {}
    for candidate in CandidateScreener(candidates, label).run_screen():
        C = candidate.digraph()
        for D in (C, opposite(C)):
            ok, defects = verify_2atd(D)
            if not ok:
                logger.warning("Coset digraph from %s rejected: %s", label, ', '.join(defects))
                continue
            found.setdefault(canonical_form(D).bytes, D)
    return sorted(found.items(), key=lambda item: item[0])


def run_cell(key: CellKey, node_budget: int) -> CellResult:
    """Searches one cell. Top-level so that worker processes can unpickle it."""
    t = _type_by_name(key.s, key.type_name)
    P = universal_group(t)
    shunt = ((key.s, 1),)
    if key.shunt_order:
        P = P.with_relators([power(shunt, key.shunt_order)])
    records = normal_quotients_of_index(P, key.index, node_budget)
    if key.shunt_order:
        records = [r for r in records if r.generator_images[key.s].order() == key.shunt_order]
    candidates = [
        QuotientCandidate.from_images(key.s, r.generator_images, f"quotient({t.name}, {key.index})", cell=key)
        for r in records
    ]
    found = _screen_and_build(candidates, str(key))
    return CellResult(key, COMPLETE, len(candidates), found)


def _run_cells(keys: list[CellKey], cfg: CensusConfig,
               on_progress: Callable[[int, int], None] | None = None) -> list[CellResult]:
    results: dict[CellKey, CellResult] = {}
    runnable = []
    for key in keys:
        if key.index > cfg.index_cap:
            results[key] = CellResult(key, CAPPED)
        else:
            runnable.append(key)
    capped = len(keys) - len(runnable)
    if capped:
        logger.info("%d cells lie above the index cap %d and are reported as capped", capped, cfg.index_cap)

    quiet = logger.getEffectiveLevel() > logging.INFO
    if cfg.jobs == 1:
        for done, key in enumerate(tqdm(runnable, desc="Cells", disable=quiet), start=1):
            results[key] = run_cell(key, cfg.node_budget)
            if on_progress:
                on_progress(done, len(runnable))
    else:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as executor:
            future_to_key = {executor.submit(run_cell, key, cfg.node_budget): key for key in runnable}
            futures = as_completed(future_to_key)
            for done, future in enumerate(tqdm(futures, total=len(future_to_key), desc="Cells", disable=quiet), start=1):
                results[future_to_key[future]] = future.result()
                if on_progress:
                    on_progress(done, len(runnable))
    return [results[key] for key in sorted(results)]


# --- census ---

def _gw_seed(m: int) -> list[AtdEntry]:
    if m < 6:
        return []
    return [
        AtdEntry(entry.digraph, f"gw({entry.params.n},{entry.params.r})", gw=entry.params)
        for entry in gw_catalogue(m)
    ]


class _Merger:
    """Adds digraphs in a fixed order, keeping one entry per isomorphism class."""
    def __init__(self, seed: list[AtdEntry]):
        self.entries = list(seed)
        self.gw_by_order: dict[int, list[AtdEntry]] = {}
        for entry in seed:
            self.gw_by_order.setdefault(entry.order, []).append(entry)
        self.known: set[bytes] = set()

    def _is_gw(self, cert: bytes, n: int) -> bool:
        # seed certificates are computed only for orders that the search reaches
        for entry in self.gw_by_order.pop(n, []):
            self.known.add(entry.certificate)
        return cert in self.known

    def add(self, cert: bytes, D: Digraph, provenance: str) -> bool:
        if self._is_gw(cert, D.n) or cert in self.known:
            return False
        self.known.add(cert)
        entry = AtdEntry(D, provenance)
        entry.__dict__['certificate'] = cert
        self.entries.append(entry)
        return True


def _sorted_entries(entries: list[AtdEntry]) -> list[AtdEntry]:
    def key(entry: AtdEntry) -> tuple:
        if entry.gw is not None:
            return (entry.order, 0, entry.gw.n, entry.gw.r, b'')
        return (entry.order, 1, 0, 0, entry.certificate)
    return sorted(entries, key=key)


def run_census(cfg: CensusConfig, on_progress: Callable[[int, int], None] | None = None) -> CensusResult:
    """
    All 2-ATDs on at most ``cfg.m`` vertices reachable under the configured
    levels and caps.

    Raises:
        BudgetExceededError: A cell ran out of its node budget.
    """
    if cfg.catalog is not None:
        return catalog_census(cfg.catalog, cfg)
    logger.info("--- Census of 2-ATDs up to order %d, s in %s ---", cfg.m, list(cfg.s_range))
    merger = _Merger(_gw_seed(cfg.m) if cfg.include_gw or cfg.gw_only else [])
    logger.info("Seeded %d generalised wreath digraphs.", len(merger.entries))
    cells: list[CellResult] = []
    if not cfg.gw_only:
        cells = _run_cells(plan_cells(cfg), cfg, on_progress)
        for cell in cells:
            for cert, D in cell.found:
                if D.n <= cfg.m:
                    merger.add(cert, D, f"quotient{cell.key}")
    entries = _sorted_entries(merger.entries)
    logger.info("Census complete: %d 2-ATDs (%d generalised wreath).",
                len(entries), sum(1 for e in entries if e.gw is not None))
    return CensusResult(entries, cells, cfg)


def catalog_census(catalog: Sequence[tuple[str, PermutationGroup]], cfg: CensusConfig) -> CensusResult:
    """
    The census restricted to quotients isomorphic to a group in ``catalog``.
    Completeness holds relative to the catalog only.
    """
    logger.info("--- Catalog census over %d groups, s in %s ---", len(catalog), list(cfg.s_range))
    merger = _Merger(_gw_seed(cfg.m) if cfg.include_gw else [])
    cells: list[CellResult] = []
    for group_name, K in catalog:
        order = K.order()
        for s in cfg.s_range:
            if order % 2 ** s or order > cfg.index_bound(s):
                continue
            for t in reduced_types(s):
                P = universal_group(t)
                key = CellKey(s, t.name, order)
                candidates = [
                    QuotientCandidate.from_images(s, epi.images, f"catalog({group_name})", cell=key)
                    for epi in quotient_search_in_group(P, K)
                ]
                found = _screen_and_build(candidates, f"{group_name} {key}")
                cells.append(CellResult(key, COMPLETE, len(candidates), found))
                for cert, D in found:
                    if D.n <= cfg.m:
                        merger.add(cert, D, f"catalog({group_name})")
    entries = _sorted_entries(merger.entries)
    logger.info("Catalog census complete: %d 2-ATDs.", len(entries))
    return CensusResult(entries, sorted(cells, key=lambda c: c.key), cfg)


# --- names and records ---

def assign_names(entries: list[AtdEntry]) -> NameBook:
    """
    GWD(n;r) for generalised wreath digraphs, ATD[n;k] otherwise with k dense
    within each order in census order.
    """
    names = NameBook()
    serial: dict[int, int] = {}
    for entry in entries:
        params = entry.gw
        if params is None and entry.order <= CENSUS_DEFAULTS['GW_RECOGNITION_MAX_ORDER']:
            params = recognise_generalised_wreath(entry.digraph)
        if params is not None:
            entry.name = params.name
            names.gw[entry.certificate] = params
        else:
            serial[entry.order] = serial.get(entry.order, 0) + 1
            entry.name = f"ATD[{entry.order};{serial[entry.order]}]"
        names.digraphs[entry.certificate] = entry.name
    return names


@dataclass
class GraphFamily:
    """The census 2-ATDs sharing one underlying graph."""
    graph: Digraph
    certificate: bytes
    members: list[AtdEntry]
    graph_class: GraphClass | None = None
    name: str = ''


def group_by_underlying_graph(entries: list[AtdEntry]) -> list[GraphFamily]:
    families: dict[bytes, GraphFamily] = {}
    for entry in entries:
        U = underlying_graph(entry.digraph)
        cert = canonical_form(U).bytes
        if cert not in families:
            families[cert] = GraphFamily(U, cert, [])
        families[cert].members.append(entry)
    return sorted(families.values(), key=lambda f: (f.graph.n, f.certificate))


def name_graph_families(entries: list[AtdEntry], names: NameBook) -> list[GraphFamily]:
    """
    Classifies and names every underlying graph: GWD(n;r) when some
    orientation is generalised wreath, else HAT[n;k] or GHAT[n;k] with k dense
    within each order in certificate order.
    """
    ghat_serial: dict[int, int] = {}
    hat_serial: dict[int, int] = {}
    families = group_by_underlying_graph(entries)
    for family in families:
        family.graph_class = classify_graph(family.graph)
        gw = next((names.gw[e.certificate] for e in family.members if e.certificate in names.gw), None)
        n = family.graph.n
        if gw is not None:
            family.name = gw.name
        elif family.graph_class is GraphClass.HALF_ARC_TRANSITIVE:
            hat_serial[n] = hat_serial.get(n, 0) + 1
            family.name = f"HAT[{n};{hat_serial[n]}]"
        else:
            ghat_serial[n] = ghat_serial.get(n, 0) + 1
            family.name = f"GHAT[{n};{ghat_serial[n]}]"
        names.graphs[family.certificate] = family.name
    return families


def derive_ghat_hat(entries: list[AtdEntry], names: NameBook,
                    complete_orders: Sequence[int] = ()) -> tuple[list[dict[str, Any]], list[dict[str, Any]]]:
    """
    One record per underlying graph: arc-transitive graphs go to the GHAT
    list, half-arc-transitive ones to the HAT list.
    """
    complete = set(complete_orders)
    families = name_graph_families(entries, names)
    ghat_records, hat_records = [], []
    quiet = logger.getEffectiveLevel() > logging.INFO
    for family in tqdm(families, desc="Graphs", disable=quiet):
        calculator = GraphRecordCalculator([e.digraph for e in family.members], family.name,
                                           complete=family.graph.n in complete)
        if family.graph_class is GraphClass.HALF_ARC_TRANSITIVE:
            hat_records.append(calculator.calculate_hat_record())
        elif family.graph_class is GraphClass.ARC_TRANSITIVE:
            ghat_records.append(calculator.calculate_ghat_record())
    return ghat_records, hat_records


def emit_records(result: CensusResult) -> tuple[pd.DataFrame, pd.DataFrame, pd.DataFrame]:
    """
    Names every entry and graph and computes the three record tables.

    Returns:
        tuple[pd.DataFrame, pd.DataFrame, pd.DataFrame]: ATD, GHAT and HAT rows.
    """
    names = assign_names(result.entries)
    ghat_records, hat_records = derive_ghat_hat(result.entries, names, result.complete_orders())
    result.names = names
    quiet = logger.getEffectiveLevel() > logging.INFO
    atd_records = []
    for entry in tqdm(result.entries, desc="Records", disable=quiet):
        entry.record = RecordCalculator(entry.digraph, names).calculate_atd_record()
        atd_records.append(entry.record)
    _check_consistency(atd_records)
    return (
        pd.DataFrame(atd_records, columns=ATD_COLUMNS),
        pd.DataFrame(ghat_records, columns=GHAT_COLUMNS),
        pd.DataFrame(hat_records, columns=HAT_COLUMNS),
    )


def _check_consistency(records: list[dict[str, Any]]) -> None:
    for record in records:
        if (record['AtTy'] == 'tight') != (record['AltExp'] == 1):
            logger.warning("%s: tight attachment and alter exponent 1 disagree", record['Name'])
        if record['SelfOpp'] == 'yes' and record['IsUndAT'] != 'yes':
            logger.warning("%s is self-opposite but its underlying graph is not arc-transitive", record['Name'])


def stabiliser_bound_holds(entry: AtdEntry) -> bool:
    """|Aut(D)_v| <= 32 unless D is generalised wreath."""
    if entry.gw is not None:
        return True
    return automorphism_group(entry.digraph).order() // entry.order <= CENSUS_DEFAULTS['STABILISER_BOUND']


def recompute_atd_records(documents: dict[str, Digraph]) -> dict[str, dict[str, Any]]:
    """
    ATD rows recomputed from named digraphs alone, keyed by name.

    Graph names are rebuilt with the census naming rule, so the documents
    must hold a whole census for ``UndGrph`` to match.
    """
    entries = []
    names = NameBook()
    for name, D in documents.items():
        entry = AtdEntry(D, 'document', name=name)
        names.digraphs[entry.certificate] = name
        params = None
        if D.n <= CENSUS_DEFAULTS['GW_RECOGNITION_MAX_ORDER']:
            params = recognise_generalised_wreath(D)
        elif name.startswith('GWD('):
            n, r = name[4:-1].split(';')
            params = GwParams(int(n), int(r))
        if params is not None:
            entry.gw = params
            names.gw[entry.certificate] = params
        entries.append(entry)
    name_graph_families(_sorted_entries(entries), names)
    return {entry.name: RecordCalculator(entry.digraph, names).calculate_atd_record() for entry in entries}
