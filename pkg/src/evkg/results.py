"""Deterministic result rendering: TSV and JSON rows.

Terms are rendered in N-Triples lexical form; unbound cells are empty.
Rows are sorted lexicographically by their serialized cells so identical
solutions always produce identical bytes.
"""

from __future__ import annotations

import json

from .ntriples import term_to_ntriples
from .sparql.algebra import Solution


def solution_cells(solution: Solution) -> list[list[str]]:
    rows = []
    for row in solution.rows:
        rows.append(
            [term_to_ntriples(row[v]) if v in row else "" for v in solution.variables]
        )
    rows.sort()
    return rows


def solution_to_tsv(solution: Solution) -> str:
    lines = ["\t".join(solution.variables)]
    lines.extend("\t".join(cells) for cells in solution_cells(solution))
    return "".join(line + "\n" for line in lines)


def solution_to_json(solution: Solution) -> str:
    rows = [
        {v: cells[i] for i, v in enumerate(solution.variables) if cells[i]}
        for cells in solution_cells(solution)
    ]
    return json.dumps({"vars": solution.variables, "rows": rows}, indent=2) + "\n"


def csv_text(rows: list[list[str]]) -> str:
    # Series files are plain comma-joined; cell values never contain commas.
    return "".join(",".join(row) + "\n" for row in rows)
