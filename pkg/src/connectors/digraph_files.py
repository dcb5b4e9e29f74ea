"""
This module reads and writes digraph documents, one digraph per file:

    ATD-DIGRAPH v1 <n>
    # name: ATD[32;1]
    <out-neighbours of vertex 0>
    ...
    <out-neighbours of vertex n-1>

Neighbours are 0-based and space-separated; an empty line is a sink.
Lines starting with ``#`` are comments.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Iterator

from src.digraphs.digraph import Digraph
from src.errors import DigraphFormatError

logger = logging.getLogger(__name__)

HEADER = 'ATD-DIGRAPH v1'
SUFFIX = '.atd'


def write_digraph(D: Digraph, name: str | None = None, provenance: str | None = None) -> str:
    lines = [f"{HEADER} {D.n}"]
    if name:
        lines.append(f"# name: {name}")
    if provenance:
        lines.append(f"# provenance: {provenance}")
    lines += [' '.join(str(w) for w in D.out_adj[v]) for v in range(D.n)]
    return '\n'.join(lines) + '\n'


def read_digraph(text: str) -> tuple[Digraph, str | None]:
    """
    Parses a digraph document.

    Returns:
        tuple[Digraph, str | None]: The digraph and its ``# name:`` comment, if any.

    Raises:
        DigraphFormatError: Missing or repeated header, a malformed neighbour
            line, a vertex out of range or a wrong number of vertex lines.
    """
    n = None
    name = None
    rows: list[list[int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith('#'):
            match = re.match(r'#\s*name:\s*(.+)$', line)
            if match:
                name = match.group(1).strip()
            continue
        if line.startswith(HEADER):
            if n is not None:
                raise DigraphFormatError("duplicate header", number)
            try:
                n = int(line[len(HEADER):].strip())
            except ValueError:
                raise DigraphFormatError("header needs a vertex count", number) from None
            if n < 1:
                raise DigraphFormatError("vertex count must be positive", number)
            continue
        if n is None:
            if not line:
                continue
            raise DigraphFormatError(f"expected '{HEADER} <n>'", number)
        if len(rows) == n:
            if line:
                raise DigraphFormatError(f"more than {n} vertex lines", number)
            continue
        try:
            neighbours = [int(token) for token in line.split()]
        except ValueError:
            raise DigraphFormatError(f"malformed neighbour list '{line}'", number) from None
        for w in neighbours:
            if not 0 <= w < n:
                raise DigraphFormatError(f"neighbour {w} outside 0..{n - 1}", number)
        rows.append(neighbours)
    if n is None:
        raise DigraphFormatError("empty document")
    if len(rows) != n:
        raise DigraphFormatError(f"expected {n} vertex lines, found {len(rows)}")
    return Digraph(n, [(v, w) for v, nbrs in enumerate(rows) for w in nbrs]), name


def file_name(name: str) -> str:
    """``ATD[32;1]`` -> ``ATD_32_1.atd``."""
    return re.sub(r'[^A-Za-z0-9]+', '_', name).strip('_') + SUFFIX


class DigraphDirectory:
    """
    A directory of digraph documents with an in-memory cache of parsed files.
    """
    def __init__(self, path: str | Path):
        self.path = Path(path)
        self.cache: dict[Path, tuple[Digraph, str | None]] = {}

    def write(self, D: Digraph, name: str, provenance: str | None = None) -> Path:
        self.path.mkdir(parents=True, exist_ok=True)
        target = self.path / file_name(name)
        target.write_text(write_digraph(D, name, provenance), encoding='utf-8', newline='\n')
        return target

    def read(self, target: Path) -> tuple[Digraph, str | None]:
        if target not in self.cache:
            self.cache[target] = read_digraph(target.read_text(encoding='utf-8'))
        return self.cache[target]

    def __iter__(self) -> Iterator[tuple[Digraph, str | None]]:
        for target in sorted(self.path.glob(f"*{SUFFIX}")):
            yield self.read(target)

    def by_name(self) -> dict[str, Digraph]:
        documents = {}
        for D, name in self:
            if name is None:
                logger.warning("Skipping an unnamed digraph document in %s", self.path)
                continue
            documents[name] = D
        return documents
