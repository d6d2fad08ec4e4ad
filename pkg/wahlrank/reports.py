from __future__ import annotations

import json
from typing import Any, Dict, Iterable, List, Mapping

import pandas as pd

from wahlrank import schema
from wahlrank.engine.scalars import format_bool, format_rows


def as_rows(reports: Iterable[Any]) -> List[Dict[str, Any]]:
    """Report objects (anything with as_dict) or mappings to plain dicts."""
    out = []
    for r in reports:
        out.append(dict(r.as_dict()) if hasattr(r, "as_dict") else dict(r))
    return out


def to_dataframe(rows: Iterable[Mapping[str, Any]], stream: str = "plane") -> pd.DataFrame:
    """
    Build a DataFrame strictly in schema order. No aliasing or renaming.
    Missing keys become None.
    """
    keys = schema.keys(stream)
    recs = [{k: r.get(k, None) for k in keys} for r in rows]
    # object dtype keeps ints as ints next to None
    return pd.DataFrame(recs, columns=keys, dtype=object)


def to_2d_for_table(
    rows: Iterable[Mapping[str, Any]], stream: str = "plane"
) -> tuple[list[str], list[list[Any]]]:
    """Return (headers, data) strictly from schema, visible columns only."""
    keys = schema.visible_keys(stream)
    headers = [schema.table_label(k) for k in keys]
    data = [[r.get(k, None) for k in keys] for r in format_rows(rows)]
    return headers, data


def render_json(rows: Iterable[Mapping[str, Any]], stream: str = "plane") -> str:
    """JSON array of report objects, fields in schema order."""
    keys = schema.keys(stream)
    ordered = [{k: r.get(k, None) for k in keys} for r in rows]
    return json.dumps(ordered, indent=2)


def parse_json(text: str) -> List[Dict[str, Any]]:
    """Inverse of render_json."""
    data = json.loads(text)
    if not isinstance(data, list):
        raise ValueError("report JSON must be an array")
    return data


def render_csv(rows: Iterable[Mapping[str, Any]], stream: str = "plane") -> str:
    """CSV with the fixed export columns; booleans as true/false, None as empty."""
    df = to_dataframe(format_rows(rows), stream)[schema.export_keys(stream)]
    return df.to_csv(index=False, lineterminator="\n")


def render_table(rows: Iterable[Mapping[str, Any]], stream: str = "plane") -> str:
    rows = list(rows)
    if not rows:
        return "No report rows."
    headers, data = to_2d_for_table(rows, stream)
    df = pd.DataFrame(data, columns=headers).fillna("")
    return df.to_string(index=False)


RENDERERS = {"json": render_json, "csv": render_csv, "table": render_table}


def render(rows: Iterable[Mapping[str, Any]], fmt: str, stream: str = "plane") -> str:
    try:
        renderer = RENDERERS[fmt]
    except KeyError:
        raise ValueError(f"unknown output format: {fmt!r}") from None
    return renderer(list(rows), stream)


# Criteria answers are single records with nested inputs
def criteria_answer(
    query: str, inputs: Mapping[str, Any], result: Any, statement: str
) -> Dict[str, Any]:
    return {"query": query, "inputs": dict(inputs), "result": result, "paper_statement": statement}


def render_answer(answer: Mapping[str, Any], fmt: str) -> str:
    """
    json: the answer object; csv/table: one flat row with the inputs inlined.
    """
    if fmt == "json":
        return json.dumps(dict(answer), indent=2)
    flat: Dict[str, Any] = {"query": answer["query"]}
    flat.update(answer["inputs"])
    result = answer["result"]
    if isinstance(result, Mapping):
        flat.update(result)
    else:
        flat["result"] = result
    flat["paper_statement"] = answer["paper_statement"]
    cells = {}
    for k, v in flat.items():
        if v is None:
            v = ""
        elif isinstance(v, bool):
            v = format_bool(v)
        cells[k] = v
    df = pd.DataFrame([cells], dtype=object)
    if fmt == "csv":
        return df.to_csv(index=False, lineterminator="\n")
    if fmt == "table":
        return df.to_string(index=False)
    raise ValueError(f"unknown output format: {fmt!r}")


def write_output(text: str, path: str | None) -> None:
    """Write UTF-8 text to path, or to stdout when path is None."""
    if not text.endswith("\n"):
        text += "\n"
    if path is None:
        print(text, end="")
        return
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(text)
