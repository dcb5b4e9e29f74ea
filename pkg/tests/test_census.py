import pandas as pd
import pytest

from src.census.pipeline import (CAPPED, COMPLETE, AtdEntry, CellKey, CensusConfig, assign_names, default_s_range,
                                 emit_records, plan_cells, recompute_atd_records, run_cell, run_census,
                                 stabiliser_bound_holds, verify_2atd)
from src.census.records import ATD_COLUMNS, GHAT_COLUMNS, HAT_COLUMNS, recognise_generalised_wreath
from src.census.screener import CandidateScreener, QuotientCandidate
from src.census.summary import census_summary, completeness_report
from src.connectors.group_catalog import load_group_catalog
from src.digraphs.constructions import GwParams, generalised_wreath, wreath
from src.digraphs.digraph import opposite
from src.errors import PreconditionError
from src.groups.named_groups import cyclic_group
from src.symmetry.automorphisms import automorphism_group, canonical_form


@pytest.fixture(scope='module')
def small_census():
    result = run_census(CensusConfig(m=6, s_range=(1, 2)))
    atd, ghat, hat = emit_records(result)
    return result, atd, ghat, hat


def assert_consistent_census(result, atd):
    """Distinct entries, closed under opposite, |Aut(D)_v| = 2^s, and SelfOpp implies IsUndAT."""
    certificates = [entry.certificate for entry in result.entries]
    assert len(set(certificates)) == len(certificates)
    for entry in result.entries:
        assert canonical_form(opposite(entry.digraph)).bytes in certificates
    rows = atd.set_index('Name')
    for entry in result.entries:
        row = rows.loc[entry.name]
        assert automorphism_group(entry.digraph).order() == entry.order * 2 ** int(row['s'])
        if row['SelfOpp'] == 'yes':
            assert row['IsUndAT'] == 'yes'


# --- configuration and planning ---

def test_verify_2atd(w3, octahedron):
    assert verify_2atd(w3) == (True, [])
    ok, defects = verify_2atd(octahedron)
    assert not ok
    assert 'not asymmetric' in defects


@pytest.mark.parametrize("m,expected", [
    (10, (1, 2, 3, 4)),
    (640, (1, 2, 3, 4)),
    (641, (1, 2, 3, 4, 5)),
])
def test_default_s_range(m, expected):
    assert default_s_range(m) == expected


def test_default_s_range_is_capped_at_the_catalogue(caplog):
    assert default_s_range(100_000) == (1, 2, 3, 4, 5)
    assert 'not catalogued' in caplog.text


def test_config_validation():
    with pytest.raises(PreconditionError):
        CensusConfig(m=0)
    with pytest.raises(PreconditionError):
        CensusConfig(m=10, s_range=(6,))
    with pytest.raises(PreconditionError):
        CensusConfig(m=10, jobs=0)
    assert CensusConfig(m=10, s_range=(2, 1, 2)).s_range == (1, 2)


def test_exceptional_order_warning(caplog):
    CensusConfig(m=8100, s_range=(1,))
    assert 'exceptional order' in caplog.text


def test_plan_cells_split_by_shunt_order():
    cells = plan_cells(CensusConfig(m=3, s_range=(1,)))
    assert cells == sorted(cells)
    assert CellKey(1, 'A_1^1', 6, 3) in cells
    assert CellKey(1, 'A_1^1', 6, 2) in cells
    assert all(key.shunt_order <= key.index // 2 for key in cells)


def test_plan_cells_unsplit():
    cells = plan_cells(CensusConfig(m=3, s_range=(1,), split_by_shunt_order=False))
    assert cells == [CellKey(1, 'A_1^1', 2), CellKey(1, 'A_1^1', 4), CellKey(1, 'A_1^1', 6)]
    assert str(cells[0]) == '(s=1, A_1^1, index 2)'


def test_run_cell_finds_the_wreath_digraph(w3):
    result = run_cell(CellKey(2, 'A_2^1', 24), node_budget=10 ** 8)
    assert result.status == COMPLETE
    assert result.order == 6
    assert result.candidates >= 1
    certificates = [cert for cert, _ in result.found]
    assert len(certificates) == 1
    assert recognise_generalised_wreath(result.found[0][1]) == GwParams(3, 1)


def test_screener_rejects_normal_stabiliser():
    # in C4 the subgroup generated by an involution is normal
    C4 = cyclic_group(4)
    g = C4.generators[0]
    candidate = QuotientCandidate.from_images(1, (g ** 2, g), 'test')
    assert CandidateScreener([candidate]).run_screen() == []


def test_catalog_census_over_wreath_automorphisms(w3):
    G = automorphism_group(w3)
    result = run_census(CensusConfig(m=6, s_range=(2,), include_gw=False,
                                     catalog=[('AutW3', G)]))
    assert len(result.entries) == 1
    assert result.entries[0].provenance == 'catalog(AutW3)'


# --- census runs ---

def test_small_census_is_the_wreath_digraph(small_census):
    result, atd, ghat, hat = small_census
    assert [entry.name for entry in result.entries] == ['GWD(3;1)']
    assert result.complete_orders() == [1, 2, 3, 4, 5, 6]
    assert all(cell.status == COMPLETE for cell in result.cells)
    assert list(atd.columns) == ATD_COLUMNS
    assert list(ghat.columns) == GHAT_COLUMNS
    assert list(hat.columns) == HAT_COLUMNS


def test_small_census_records(small_census):
    _, atd, ghat, hat = small_census
    row = atd.iloc[0]
    assert row['Name'] == 'GWD(3;1)'
    assert row['|V|'] == 6
    assert row['SelfOpp'] == 'yes'
    assert row['Opp'] == 'GWD(3;1)'
    assert row['IsUndAT'] == 'yes'
    assert row['UndGrph'] == 'GWD(3;1)'
    assert row['s'] == 2
    assert row['GvAb'] == 'Ab'
    assert row['|Tv:Gv|'] == 2
    assert row['|Av:Gv|'] == 2
    assert row['Solv'] == 'solv'
    assert (row['Rad'], row['AtNo'], row['AtTy']) == (2, 2, 'tight')
    assert row['|AltCyc|'] == 3
    assert (row['AltExp'], row['AltPer'], row['AltSeq']) == (1, 3, [2])
    assert row['IsGWD'] == 'yes'

    assert len(hat) == 0
    graph = ghat.iloc[0]
    assert graph['Name'] == 'GWD(3;1)'
    assert (graph['gir'], graph['bip']) == (3, 'nb')
    assert graph['CayTy'] == 'Circ'
    assert graph['|Av|'] == 8
    assert graph['|Gv|'] == [4]
    assert graph['[|ConCyc|]'] == ['3s', '4s', '6s']


def test_small_census_summary(small_census):
    _, atd, ghat, hat = small_census
    summary = census_summary(atd, ghat, hat)
    assert summary['atd_count'] == 1
    assert summary['gw_count'] == 1
    assert summary['by_level'] == {2: {'count': 1, 'smallest': 6}}
    assert summary['non_abelian_count'] == 0
    assert summary['non_abelian_smallest'] is None
    assert summary['arc_transitive_count'] == 1
    assert summary['hat_count'] == 0


def test_completeness_report(small_census):
    result = small_census[0]
    report = completeness_report(result.cells, 6, result.complete_orders())
    lines = report.splitlines()
    assert lines[0].split() == ['s', 'type', 'index', '|g|', 'status', 'quotients', 'digraphs']
    assert lines[-2] == f"cells: {len(result.cells)}, capped: 0"
    assert lines[-1] == 'complete for orders 1..6'
    assert report.endswith('\n')


def test_completeness_report_warns_at_the_exceptional_order():
    report = completeness_report([], 8100)
    assert report.startswith('!' * 72)
    assert report.splitlines()[-1] == 'complete for no order'


def test_index_cap_marks_cells_capped():
    result = run_census(CensusConfig(m=6, s_range=(1, 2), index_cap=12))
    capped = [cell for cell in result.cells if cell.status == CAPPED]
    assert capped
    assert all(cell.key.index > 12 for cell in capped)
    assert result.complete_orders() == [1, 2, 3]
    assert [entry.provenance for entry in result.entries] == ['gw(3,1)']


def test_gw_only_census():
    result = run_census(CensusConfig(m=10, gw_only=True))
    names = assign_names(result.entries)
    assert [entry.name for entry in result.entries] == ['GWD(3;1)', 'GWD(4;1)', 'GWD(5;1)']
    assert len(names.gw) == 3
    assert result.cells == []
    assert result.complete_orders() == []


def test_catalog_census_over_cyclic_group_is_empty():
    cfg = CensusConfig(m=6, s_range=(1, 2), include_gw=False, catalog=[('C4', cyclic_group(4))])
    assert run_census(cfg).entries == []


def test_recompute_records_from_documents(small_census):
    result, atd, _, _ = small_census
    records = recompute_atd_records({entry.name: entry.digraph for entry in result.entries})
    assert records['GWD(3;1)'] == atd.iloc[0].to_dict()


def test_small_census_is_consistent(small_census):
    result, atd, _, _ = small_census
    assert_consistent_census(result, atd)


def test_stabiliser_bound(small_census):
    entry = small_census[0].entries[0]
    assert stabiliser_bound_holds(entry)


def test_recognised_wreath_digraphs_get_wreath_names():
    entries = [AtdEntry(wreath(4), 'test'), AtdEntry(generalised_wreath(4, 2), 'test')]
    names = assign_names(entries)
    assert [e.name for e in entries] == ['GWD(4;1)', 'GWD(4;2)']
    assert set(names.digraphs.values()) == {'GWD(4;1)', 'GWD(4;2)'}


# --- larger runs ---

@pytest.mark.slow
def test_census_to_order_32():
    result = run_census(CensusConfig(m=32, s_range=(1, 2, 3, 4)))
    atd, ghat, hat = emit_records(result)
    order32 = atd[atd['|V|'] == 32]
    assert (order32['IsGWD'] == 'no').sum() == 4
    assert all(stabiliser_bound_holds(entry) for entry in result.entries)
    assert len(pd.unique(atd['Name'])) == len(atd)
    assert_consistent_census(result, atd)


@pytest.mark.slow
def test_smallest_non_wreath_two_arc_transitive_digraph_has_order_18():
    result = run_census(CensusConfig(m=18))
    atd, _, _ = emit_records(result)
    assert result.complete_orders() == list(range(1, 19))
    assert_consistent_census(result, atd)
    found = atd[(atd['s'] >= 2) & (atd['IsGWD'] == 'no')]
    assert (found['|V|'] >= 18).all()
    assert (found['|V|'] == 18).any()


@pytest.mark.slow
def test_order_336_catalog_census():
    cfg = CensusConfig(m=42, s_range=(3,), include_gw=False, catalog=load_group_catalog('bundled:order336'))
    result = run_census(cfg)
    assert result.entries
    assert all(entry.order == 42 for entry in result.entries)
    atd, _, _ = emit_records(result)
    for _, row in atd.iterrows():
        assert row['GvAb'] == 'n-Ab'
        assert row['SelfOpp'] == 'yes'
        assert row['s'] == 3
        assert row['Rad'] == 3
        assert row['Solv'] == 'n-solv'


@pytest.mark.slow
@pytest.mark.parametrize("n,r", [(n, r) for n in range(3, 9) for r in range(1, n) if n * 2 ** r <= 128])
def test_generalised_wreath_battery(n, r):
    D = generalised_wreath(n, r)
    assert verify_2atd(D)[0]
    assert automorphism_group(D).order() == n * 2 ** n
    assert recognise_generalised_wreath(D) == GwParams(n, r)
