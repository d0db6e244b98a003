"""Case classification tables for the rings O(D).

For every e in D the reduction needs eta_e and its case tag; this module
collects those into rows, regenerates the table over all subsets of
S = {1, 2, 3, 4, 6}, and writes the rows as CSV or markdown.
"""

from typing import Any, Dict, List, Sequence
import csv
import logging

from errors import SpecError
from ge_types import CaseKind
from odring import ODRing, SMALL_CONDUCTORS, nonempty_subsets, od_ring

log = logging.getLogger(__name__)


def classify_ring(ring: ODRing) -> Dict[str, Any]:
    """Rows (e, eta, tag, k, flagged) for every e in D, plus the pivot.

    Args:
        ring: an O(D) with |D| >= 2

    Returns:
        {"ring": spec, "pivot": e, "rows": [...]}; a row is flagged when its
        tag is Fallback.
    """
    if len(ring.D) < 2:
        raise SpecError(f"classification needs |D| >= 2, got D={list(ring.D)}")
    rows = []
    for e in ring.D:
        tag = ring.classify_case(e)
        rows.append({
            "e": e,
            "eta": list(tag.eta.coeffs),
            "tag": tag.kind.value,
            "k": tag.k,
            "label": tag.label(),
            "flagged": tag.kind is CaseKind.FALLBACK,
        })
    pivot = ring.select_pivot()
    log.debug(f"classified {ring!r}: pivot {pivot}, {sum(r['flagged'] for r in rows)} flagged rows")
    return {"ring": ring.spec(), "pivot": pivot, "rows": rows}


def case_table(D: Sequence[int] = SMALL_CONDUCTORS) -> List[Dict[str, Any]]:
    """Classification of every subset of D with at least two members, in canonical order."""
    return [
        {"D": list(sub), **classify_ring(od_ring(sub))}
        for sub in nonempty_subsets(D)
        if len(sub) >= 2
    ]


def _flat_rows(tables: List[Dict[str, Any]]) -> List[Dict[str, Any]]:
    out = []
    for table in tables:
        D = table["ring"]["D"]
        for row in table["rows"]:
            out.append({
                "D": " ".join(str(d) for d in D),
                "e": row["e"],
                "eta": " ".join(str(c) for c in row["eta"]),
                "tag": row["label"],
                "pivot": row["e"] == table["pivot"],
                "flagged": row["flagged"],
            })
    return out


def write_classification_csv(file_path_or_buffer, tables: List[Dict[str, Any]]) -> None:
    """Write classification rows to a CSV file or buffer."""
    fieldnames = ["D", "e", "eta", "tag", "pivot", "flagged"]
    if isinstance(file_path_or_buffer, str):
        with open(file_path_or_buffer, "w", newline="", encoding="utf-8") as csvfile:
            _write_csv_content(csvfile, fieldnames, tables)
    else:
        _write_csv_content(file_path_or_buffer, fieldnames, tables)


def _write_csv_content(csvfile, fieldnames: List[str], tables: List[Dict[str, Any]]) -> None:
    writer = csv.DictWriter(csvfile, fieldnames=fieldnames)
    writer.writeheader()
    for row in _flat_rows(tables):
        writer.writerow(row)


def markdown_table(tables: List[Dict[str, Any]]) -> str:
    """Markdown rendering; Fallback tags are bold, the pivot row is starred."""
    rows = _flat_rows(tables)
    flagged = sum(1 for r in rows if r["flagged"])
    lines = [
        "# Case Classification\n\n",
        f"Rings: {len(tables)}, rows: {len(rows)}, flagged: {flagged}\n\n",
        "| D | e | eta | Tag | Pivot |\n",
        "|---|--:|-----|-----|:-----:|\n",
    ]
    for r in rows:
        tag = f"**{r['tag']}**" if r["flagged"] else r["tag"]
        D = "{" + r["D"].replace(" ", ",") + "}"
        eta = "[" + r["eta"].replace(" ", ", ") + "]"
        lines.append(f"| {D} | {r['e']} | {eta} | {tag} | {'*' if r['pivot'] else ''} |\n")
    return "".join(lines)


def write_classification_markdown(file_path: str, tables: List[Dict[str, Any]]) -> None:
    with open(file_path, "w", encoding="utf-8") as f:
        f.write(markdown_table(tables))
