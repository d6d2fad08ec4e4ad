from tests.test_report_schema_contract import plane_row
from tools.verification_report import acceptance_rows, build_verification_report, main


def test_build_verification_report_includes_expected_column():
    report = build_verification_report([plane_row()])
    header, rule, line = report.splitlines()

    assert header.startswith("d | k | genus | domain_dim | rank")
    assert header.endswith("arithmetic | expected")
    assert set(rule.split(" | ")) == {"---"}
    assert line == "8 | 1 | 21 | 381 | 90 | 100 | 10 | 90 | 10 | true | true | exact | 90/10"


def test_rows_outside_the_acceptance_table_have_no_expectation():
    line = build_verification_report([plane_row(d=9, k=0)]).splitlines()[-1]

    assert line.endswith("| exact | ")


def test_empty_report():
    assert build_verification_report([]) == "No report rows."


def test_fast_acceptance_rows_all_match():
    rows = acceptance_rows()

    assert [(r["d"], r["k"]) for r in rows] == [(6, 0), (7, 0), (8, 0), (8, 1)]
    assert all(r["match"] for r in rows)


def test_main_prints_table(capsys):
    assert main([]) == 0

    out = capsys.readouterr().out
    assert "27/0" in out
    assert "90/10" in out
