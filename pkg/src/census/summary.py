"""
Headline statistics of a census run and the completeness report.
"""

from __future__ import annotations

from typing import Any, Sequence

import pandas as pd

from src.config import CENSUS_DEFAULTS


def _smallest(df: pd.DataFrame) -> int | None:
    return int(df['|V|'].min()) if len(df) else None


def census_summary(atd: pd.DataFrame, ghat: pd.DataFrame, hat: pd.DataFrame) -> dict[str, Any]:
    """
    Reduces the three record tables to the headline numbers of a census.

    Args:
        atd (pd.DataFrame): ATD rows.
        ghat (pd.DataFrame): Arc-transitive GHAT rows.
        hat (pd.DataFrame): HAT rows.

    Returns:
        dict[str, Any]: Counts and smallest orders, keyed by statistic.
    """
    # tables read back from CSV hold strings
    atd = atd.assign(**{'|V|': pd.to_numeric(atd['|V|']), 's': pd.to_numeric(atd['s'])})
    hat = hat.assign(**{'|V|': pd.to_numeric(hat['|V|'])})
    gw_mask = atd['IsGWD'] == 'yes'
    levels = atd.groupby('s')['|V|'].agg(['count', 'min']) if len(atd) else pd.DataFrame(columns=['count', 'min'])
    non_abelian = atd[atd['GvAb'] == 'n-Ab']
    # non-self-opposite digraphs whose underlying graph is still arc-transitive
    at_pairs = atd[(atd['SelfOpp'] == 'no') & (atd['IsUndAT'] == 'yes')]
    stab_orders = hat['|Gv|'].astype(int).value_counts().sort_index() if len(hat) else pd.Series(dtype=int)

    summary = {
        'atd_count': int(len(atd)),
        'gw_count': int(gw_mask.sum()),
        'by_level': {int(s): {'count': int(row['count']), 'smallest': int(row['min'])} for s, row in levels.iterrows()},
        'non_abelian_count': int(len(non_abelian)),
        'non_abelian_smallest': _smallest(non_abelian),
        'non_self_opposite_at_count': int(len(at_pairs)),
        'non_self_opposite_at_smallest': _smallest(at_pairs),
        'non_self_opposite_at_indices': sorted({int(x) for x in at_pairs['|Av:Gv|']}),
        'ghat_count': int(len(ghat) + len(hat)),
        'arc_transitive_count': int(len(ghat)),
        'hat_count': int(len(hat)),
        'hat_stabiliser_orders': {int(k): int(v) for k, v in stab_orders.items()},
        'hat_non_solvable_count': int((hat['Solv'] == 'n-solv').sum()) if len(hat) else 0,
    }
    return summary


def completeness_report(cells: Sequence[Any], m: int, complete_orders: Sequence[int] = ()) -> str:
    """
    Per-cell status table followed by the orders for which the run is proven
    complete.

    Args:
        cells (Sequence[Any]): ``CellResult`` objects from the pipeline.
        m (int): The largest order of the run.
        complete_orders (Sequence[int]): Orders with every relevant cell complete.
    """
    lines = []
    if m >= CENSUS_DEFAULTS['EXCEPTIONAL_ORDER']:
        lines += [
            '!' * 72,
            f"! m = {m} reaches order {CENSUS_DEFAULTS['EXCEPTIONAL_ORDER']}: a 2-ATD with vertex-stabiliser",
            f"! larger than {CENSUS_DEFAULTS['STABILISER_BOUND']} exists there and is outside this search.",
            '!' * 72,
        ]
    lines.append(f"{'s':>2} {'type':<8} {'index':>7} {'|g|':>5} {'status':<9} {'quotients':>9} {'digraphs':>8}")
    for cell in cells:
        key = cell.key
        lines.append(
            f"{key.s:>2} {key.type_name:<8} {key.index:>7} {key.shunt_order or '-':>5} "
            f"{cell.status:<9} {cell.candidates:>9} {len(cell.found):>8}"
        )
    capped = sum(1 for cell in cells if cell.status != 'complete')
    lines.append(f"cells: {len(cells)}, capped: {capped}")
    if complete_orders:
        lines.append(f"complete for orders 1..{max(complete_orders)}")
    else:
        lines.append("complete for no order")
    return '\n'.join(lines) + '\n'
