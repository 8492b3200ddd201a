"""Comparison table rendering for evaluated runs.

Column order: NED, Sem., Ent., Neu., Con., Overall, Factual., Relev.
NED is shown as a 0.xx mean; the others as rounded integer percents.
Each column has a direction (lower is better for NED and Con., higher
everywhere else); the best value per directed column is marked, ties
marking every holder. Raw means stay available in the machine output.
"""

from __future__ import annotations

from typing import Callable

from factfix.evaluation.metrics import percent
from factfix.models import AggregateRow

# (header, value getter, True if higher is better); Neu. carries no arrow
# in the reference layout and is left unmarked.
COLUMNS: list[tuple[str, Callable[[AggregateRow], float], bool | None]] = [
    ("NED", lambda r: r.ned, False),
    ("Sem.", lambda r: r.sem, True),
    ("Ent.", lambda r: r.nli.ent, True),
    ("Neu.", lambda r: r.nli.neu, None),
    ("Con.", lambda r: r.nli.con, False),
    ("Overall", lambda r: r.geval.overall, True),
    ("Factual.", lambda r: r.geval.factuality, True),
    ("Relev.", lambda r: r.geval.relevance, True),
]


def best_flags(rows: list[AggregateRow]) -> list[list[bool]]:
    """flags[i][j] is True when row i holds the best value in column j."""
    flags = [[False] * len(COLUMNS) for _ in rows]
    for j, (_, get, higher_better) in enumerate(COLUMNS):
        if higher_better is None:
            continue
        values = [get(row) for row in rows]
        best = max(values) if higher_better else min(values)
        for i, value in enumerate(values):
            if value == best:
                flags[i][j] = True
    return flags


def _cell(header: str, row: AggregateRow, get) -> str:
    if header == "NED":
        return f"{get(row):.2f}"
    return str(percent(get(row)))


def _label(row: AggregateRow) -> str:
    source = row.evidence_source
    if row.engine:
        source = f"{row.engine} ({'snip.' if row.mode == 'snippets' else 'full'})"
    return f"{row.system} / {source}"


def render_report(rows: list[AggregateRow], mark: str = "*") -> str:
    """Plain-text comparison table with best-in-column markers."""
    if not rows:
        raise ValueError("nothing to report")
    flags = best_flags(rows)
    headers = ["run"] + [c[0] for c in COLUMNS] + ["n"]
    table = [headers]
    for i, row in enumerate(rows):
        cells = [_label(row)]
        for j, (header, get, _) in enumerate(COLUMNS):
            cell = _cell(header, row, get)
            if flags[i][j]:
                cell += mark
            cells.append(cell)
        cells.append(str(row.n))
        table.append(cells)
    widths = [max(len(r[j]) for r in table) for j in range(len(headers))]
    lines = []
    for r, line_cells in enumerate(table):
        lines.append("  ".join(c.ljust(w) for c, w in zip(line_cells, widths)).rstrip())
        if r == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def render_tsv(rows: list[AggregateRow]) -> str:
    """Tab-separated raw means, machine-readable, no best marking."""
    headers = ["run"] + [c[0] for c in COLUMNS] + ["n"]
    lines = ["\t".join(headers)]
    for row in rows:
        cells = [_label(row)] + [f"{get(row):.6f}" for _, get, _ in COLUMNS] + [str(row.n)]
        lines.append("\t".join(cells))
    return "\n".join(lines)
