"""
This module reads permutation group catalogs:

    GROUP <name> degree=<d> [order=<o>]
    <d space-separated images>
    ...
    <blank line>

A catalog may also be named ``bundled:<key>`` to select one of the catalogs
built into ``src.groups.named_groups``.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path

from src.errors import CatalogFormatError, PreconditionError
from src.groups.named_groups import BUNDLED_CATALOGUES
from src.groups.perm_group import PermutationGroup
from src.groups.permutation import Permutation

logger = logging.getLogger(__name__)

_HEADER = re.compile(r'^GROUP\s+(\S+)\s+degree=(\d+)(?:\s+order=(\d+))?\s*$')


def read_group_catalog(text: str) -> list[tuple[str, PermutationGroup]]:
    """
    Parses a catalog and verifies every declared order.

    Raises:
        CatalogFormatError: A malformed header or permutation line, or a
            declared order that differs from the stabiliser chain's.
    """
    groups: list[tuple[str, PermutationGroup]] = []
    current: dict | None = None

    def close(line: int) -> None:
        nonlocal current
        if current is None:
            return
        G = PermutationGroup(current['gens'], current['degree'])
        declared = current['order']
        if declared is not None and G.order() != declared:
            raise CatalogFormatError(f"{current['name']} declares order {declared} but has order {G.order()}", line)
        groups.append((current['name'], G))
        current = None

    lines = text.splitlines()
    for number, raw in enumerate(lines, start=1):
        line = raw.strip()
        if line.startswith('#'):
            continue
        if not line:
            close(number)
            continue
        if current is None:
            match = _HEADER.match(line)
            if not match:
                raise CatalogFormatError(f"expected 'GROUP <name> degree=<d>', got '{line}'", number)
            name, degree, order = match.groups()
            current = {'name': name, 'degree': int(degree), 'order': int(order) if order else None, 'gens': []}
            continue
        try:
            images = [int(token) for token in line.split()]
            if len(images) != current['degree']:
                raise PreconditionError(f"expected {current['degree']} images")
            current['gens'].append(Permutation(images))
        except (ValueError, PreconditionError) as exc:
            raise CatalogFormatError(f"not a permutation: {exc}", number) from None
    close(len(lines) + 1)
    return groups


def write_group_catalog(groups: list[tuple[str, PermutationGroup]]) -> str:
    blocks = []
    for name, G in groups:
        lines = [f"GROUP {name} degree={G.degree} order={G.order()}"]
        lines += [' '.join(str(x) for x in gen.tolist()) for gen in G.generators]
        blocks.append('\n'.join(lines) + '\n')
    return '\n'.join(blocks)


def load_group_catalog(source: str) -> list[tuple[str, PermutationGroup]]:
    """Reads a catalog file, or builds ``bundled:<key>``."""
    if source.startswith('bundled:'):
        key = source.split(':', 1)[1]
        if key not in BUNDLED_CATALOGUES:
            raise PreconditionError(f"unknown bundled catalog '{key}'; known: {sorted(BUNDLED_CATALOGUES)}")
        return BUNDLED_CATALOGUES[key]()
    groups = read_group_catalog(Path(source).read_text(encoding='utf-8'))
    logger.info("Loaded %d groups from %s", len(groups), source)
    return groups
