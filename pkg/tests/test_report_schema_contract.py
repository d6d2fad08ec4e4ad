import pandas as pd
import pytest

from wahlrank import reports, schema
from wahlrank.engine.sweep import P1Job, run_p1_job


def plane_row(**changes) -> dict:
    row = {
        "d": 8,
        "k": 1,
        "genus": 21,
        "domain_dim": 381,
        "rank": 90,
        "codomain_dim": 100,
        "corank": 10,
        "predicted_rank": 90,
        "predicted_corank": 10,
        "in_theorem_range": True,
        "match": True,
        "arithmetic": "exact",
    }
    row.update(changes)
    return row


def test_plane_schema_order_and_visibility():
    assert schema.keys("plane") == [
        "d",
        "k",
        "genus",
        "domain_dim",
        "rank",
        "codomain_dim",
        "corank",
        "predicted_rank",
        "predicted_corank",
        "in_theorem_range",
        "match",
        "arithmetic",
    ]
    assert "arithmetic" not in schema.export_keys("plane")
    assert "arithmetic" not in schema.visible_keys("plane")
    assert schema.labels("p1")[-1] == "agree"
    assert schema.table_label("domain_dim") == "dom"
    assert schema.table_label("rank") == "rank"


def test_columns_returns_copies():
    cols = schema.columns("plane")
    cols[0]["label"] = "changed"

    assert schema.columns("plane")[0]["label"] == "d"


def test_dataframe_keeps_schema_order_and_ints():
    df = reports.to_dataframe([plane_row(predicted_rank=None)])

    assert list(df.columns) == schema.keys("plane")
    assert df.loc[0, "rank"] == 90
    assert isinstance(df.loc[0, "rank"], int)
    assert pd.isna(df.loc[0, "predicted_rank"])


def test_json_round_trip_in_schema_order():
    rows = [plane_row(), plane_row(k=2, in_theorem_range=False, match=False, predicted_rank=None)]

    text = reports.render_json(rows)

    assert reports.parse_json(text) == rows
    assert text.index('"d"') < text.index('"genus"') < text.index('"arithmetic"')


def test_csv_header_and_booleans():
    text = reports.render_csv([plane_row(predicted_rank=None, predicted_corank=None, match=False)])
    header, line = text.strip().split("\n")

    assert header == (
        "d,k,genus,domain_dim,rank,codomain_dim,corank,"
        "predicted_rank,predicted_corank,in_theorem_range,match"
    )
    assert line == "8,1,21,381,90,100,10,,,true,false"


def test_table_uses_compact_labels():
    text = reports.render_table([plane_row()])

    assert "pred rank" in text
    assert "arithmetic" not in text
    assert "true" in text
    assert reports.render_table([]) == "No report rows."


def test_p1_rows_render_in_p1_schema():
    rows = [run_p1_job(P1Job(2, 2, 1))]

    text = reports.render(rows, "csv", "p1")

    assert text.splitlines()[0] == "a,b,k,domain_dim,rank,codomain_dim,surjective,prediction,agree"
    assert text.splitlines()[1] == "2,2,1,4,3,3,true,surjective_by_i,true"


def test_unknown_format_and_stream():
    with pytest.raises(ValueError):
        reports.render([plane_row()], "xml")
    with pytest.raises(ValueError):
        schema.keys("torus")


def test_criteria_answer_shapes():
    answer = reports.criteria_answer("genus", {"g1": 0, "g2": 2, "d1": 9, "d2": 7}, 66, "product-curve-genus")

    assert list(answer) == ["query", "inputs", "result", "paper_statement"]
    csv = reports.render_answer(answer, "csv")
    assert csv.splitlines() == ["query,g1,g2,d1,d2,result,paper_statement", "genus,0,2,9,7,66,product-curve-genus"]


def test_write_output_to_file(tmp_path):
    path = tmp_path / "out.json"

    reports.write_output("[]", str(path))

    assert path.read_text(encoding="utf-8") == "[]\n"
