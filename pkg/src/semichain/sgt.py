"""Reader and writer for the ``.sgt`` Cayley-table text format.

::

    # optional comment lines
    3
    0 0 0
    0 1 2
    0 2 1
    labels: a b c

Line one holds the order ``n``; the next ``n`` lines hold the rows (0-based
element indices). A trailing ``labels:`` line is optional.
"""

from __future__ import annotations

import os
from pathlib import Path

from .sgcore import CayleyTable


class SgtParseError(ValueError):
    def __init__(self, message: str, line: int, column: int | None = None, source: str = "<string>"):
        self.line = line
        self.column = column
        self.source = source
        where = f"{source}:{line}" + (f":{column}" if column is not None else "")
        super().__init__(f"{where}: {message}")


def loads(text: str, source: str = "<string>") -> CayleyTable:
    lines = [
        (i, raw.strip())
        for i, raw in enumerate(text.splitlines(), start=1)
        if raw.strip() and not raw.lstrip().startswith("#")
    ]
    if not lines:
        raise SgtParseError("empty input, expected the table order", 1, source=source)
    lineno, head = lines[0]
    try:
        n = int(head)
    except ValueError:
        raise SgtParseError(f"expected the table order, got {head!r}", lineno, 1, source) from None
    if n < 1:
        raise SgtParseError(f"order must be positive, got {n}", lineno, 1, source)
    body = lines[1:]
    if len(body) < n:
        last = body[-1][0] if body else lineno
        raise SgtParseError(f"expected {n} rows, found {len(body)}", last + 1, source=source)

    rows = []
    for lineno, line in body[:n]:
        tokens = line.split()
        if len(tokens) != n:
            raise SgtParseError(f"expected {n} entries, found {len(tokens)}", lineno, source=source)
        row = []
        col = 1
        for tok in tokens:
            col = line.index(tok, col - 1) + 1
            try:
                v = int(tok)
            except ValueError:
                raise SgtParseError(f"entry {tok!r} is not an integer", lineno, col, source) from None
            if not 0 <= v < n:
                raise SgtParseError(f"entry {v} outside [0, {n})", lineno, col, source)
            row.append(v)
            col += len(tok)
        rows.append(row)

    labels = None
    rest = body[n:]
    if rest:
        lineno, line = rest[0]
        if not line.startswith("labels:"):
            raise SgtParseError(f"unexpected content after {n} rows", lineno, 1, source)
        labels = line[len("labels:"):].split()
        if len(labels) != n:
            raise SgtParseError(f"expected {n} labels, found {len(labels)}", lineno, source=source)
        if len(set(labels)) != n:
            raise SgtParseError("labels must be pairwise distinct", lineno, source=source)
        if len(rest) > 1:
            raise SgtParseError("unexpected content after labels", rest[1][0], 1, source)
    return CayleyTable(rows, labels)


def dumps(table: CayleyTable) -> str:
    out = [str(table.order)]
    out.extend(" ".join(map(str, row)) for row in table.rows)
    if table.labels is not None:
        out.append("labels: " + " ".join(table.labels))
    return "\n".join(out) + "\n"


def load(path: str | os.PathLike) -> CayleyTable:
    path = Path(path)
    return loads(path.read_text(), source=str(path))


def dump(table: CayleyTable, path: str | os.PathLike) -> None:
    Path(path).write_text(dumps(table))
