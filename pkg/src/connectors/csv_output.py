"""
This module renders census record tables as CSV documents and reads them back.
Inside a field every comma becomes a semicolon, so lists render as ``[2;4]``.
"""

from __future__ import annotations

import io
from pathlib import Path
from typing import Any, Iterable

import pandas as pd

from src.census.records import ATD_COLUMNS, GHAT_COLUMNS, HAT_COLUMNS
from src.errors import PreconditionError

COLUMNS = {
    'ATD': ATD_COLUMNS,
    'GHAT': GHAT_COLUMNS,
    'HAT': HAT_COLUMNS,
}


def format_field(value: Any) -> str:
    if isinstance(value, (list, tuple)):
        return '[' + ';'.join(format_field(v) for v in value) + ']'
    return str(value).replace(',', ';')


def records_frame(kind: str, records: pd.DataFrame | Iterable[dict[str, Any]]) -> pd.DataFrame:
    """Record table of one kind with every field rendered as text."""
    if kind not in COLUMNS:
        raise PreconditionError(f"unknown record kind '{kind}'")
    columns = COLUMNS[kind]
    df = records if isinstance(records, pd.DataFrame) else pd.DataFrame(list(records), columns=columns)
    missing = [c for c in columns if c not in df.columns]
    if missing:
        raise PreconditionError(f"{kind} records lack {missing}")
    return df[columns].apply(lambda col: col.map(format_field)) if len(df) else pd.DataFrame(columns=columns)


def write_csv(kind: str, records: pd.DataFrame | Iterable[dict[str, Any]]) -> str:
    buffer = io.StringIO()
    records_frame(kind, records).to_csv(buffer, index=False, lineterminator='\n')
    return buffer.getvalue()


def read_csv(path: str | Path) -> pd.DataFrame:
    """Reads a census CSV keeping every field as the emitted text."""
    return pd.read_csv(path, dtype=str, keep_default_na=False)
