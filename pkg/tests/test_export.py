import io

import openpyxl

from cli import RunConfig, dispatch
from components.tab_export import build_csv_bundle, build_workbook
from utils.windows import Window


def sample_reports():
    count, _ = dispatch(RunConfig(group="psq", command="count", x=3, window=Window(0, 120), bins=2))
    search, _ = dispatch(RunConfig(group="ppw", command="search", g=2, x=7))
    return [count, search]


def test_workbook_has_summary_and_detail_sheets():
    reports = sample_reports()
    wb = openpyxl.load_workbook(io.BytesIO(build_workbook(reports)))
    assert wb.sheetnames == ["요약", "1_psq count", "2_ppw search"]
    summary = wb["요약"]
    assert summary["C5"].value == "psq count"
    assert summary["E5"].value == "1/1 통과"
    detail = wb["1_psq count"]
    assert [detail.cell(row=3, column=c).value for c in range(1, 5)] == ["bin_start", "bin_end", "count", "model"]


def test_csv_bundle_sections():
    text = build_csv_bundle(sample_reports())
    assert text.startswith("# psq count\nbin_start,bin_end,count,model\n")
    assert "# ppw search\nfield,value\n" in text
