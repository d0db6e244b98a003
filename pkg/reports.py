from typing import Any, Dict, List, Optional
import json

from genson import SchemaBuilder

from zcge_io.fs import ensure_parent


def schema_for(document: Any) -> Dict[str, Any]:
    builder = SchemaBuilder()
    builder.add_object(document)
    return builder.to_schema()


def write_json(path: str, document: Any, with_schema: bool = True) -> None:
    """Write document to path; with_schema also writes `<path>.schema.json` inferred by genson."""
    ensure_parent(path)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(document, f, ensure_ascii=False, indent=2)
    if with_schema:
        with open(f"{path}.schema.json", "w", encoding="utf-8") as f:
            json.dump(schema_for(document), f, indent=2)


def _verified_cell(ok: int, total: int) -> str:
    if total == 0:
        return "–"
    mark = "✅" if ok == total else "❌"
    return f"{mark} {ok}/{total}"


def _error_cell(error: Optional[str]) -> str:
    if not error:
        return ""
    return error.replace("|", "\\|").replace("\n", " ")


def demo_markdown_table(report: Dict[str, Any]) -> str:
    lines: List[str] = [
        f"# Z[C_{report['n']}] reduction demo (k={report['k']}, seed={report['seed']})\n\n",
        "| D | Reduced | Factored | Max length | Fallbacks | Budget | First error |\n",
        "|---|:-------:|:--------:|-----------:|----------:|-------:|-------------|\n",
    ]
    for sub in report["subsets"]:
        D = "{" + ",".join(str(d) for d in sub["D"]) + "}"
        lines.append(
            f"| {D} | {_verified_cell(sub['reductions_verified'], sub['jobs'])} | "
            f"{_verified_cell(sub['factorizations_verified'], sub['jobs'])} | "
            f"{sub['max_word_length']} | {sub['fallback_activations']} | {sub['budget_failures']} | "
            f"{_error_cell(sub.get('error'))} |\n"
        )
    verdict = "all certificates verified" if report["all_verified"] else "FAILURES present"
    lines.append(f"\n**Result:** {verdict}\n")
    return "".join(lines)


def write_markdown_table(path: str, report: Dict[str, Any]) -> None:
    ensure_parent(path)
    with open(path, "w", encoding="utf-8") as f:
        f.write(demo_markdown_table(report))
