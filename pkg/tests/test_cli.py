import io
import json

import pandas as pd
import pytest

import cli
from cli import RunConfig, dispatch
from utils.errors import PreconditionError
from utils.reports import canonical_json
from utils.windows import Window


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


def test_psq_search_json(capsys):
    code, out = run_cli(capsys, "psq", "search", "--x", "5", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["outputs"]["n"] == "241"
    assert payload["command"] == "psq search"


def test_ppw_search(capsys):
    code, out = run_cli(capsys, "ppw", "search", "--g", "2", "--x", "7")
    assert code == 0
    payload = json.loads(out)
    assert payload["outputs"]["q_g"] == "11"
    assert payload["outputs"]["variant"] == "q_g"
    [check] = payload["identity_checks"]
    assert check["name"] == "q_g_le_abs_g_times_p_g" and check["pass"]


def test_charsum_rf(capsys):
    code, out = run_cli(capsys, "charsum", "rf", "--x", "3", "--f", "3", "--from", "0", "--len", "24")
    assert code == 0
    payload = json.loads(out)
    assert payload["outputs"]["value"] == "0"
    assert all(check["pass"] for check in payload["identity_checks"])


def test_json_output_round_trips(capsys):
    _, out = run_cli(capsys, "psq", "count", "--x", "5", "--from", "0", "--len", "2400", "--bins", "4")
    text = out.rstrip("\n")
    assert canonical_json(json.loads(text)) == text


def test_count_csv_histogram(capsys):
    code, out = run_cli(
        capsys, "ppw", "count", "--g", "2", "--x", "13", "--from", "0", "--len", "30030", "--bins", "8",
        "--format", "csv",
    )
    assert code == 0
    lines = out.split("\n")
    assert lines[0] == "bin_start,bin_end,count,model"
    assert len([line for line in lines[1:] if line]) == 8
    assert sum(int(line.split(",")[2]) for line in lines[1:] if line) == 5745


def test_usage_errors_exit_two(capsys):
    assert run_cli(capsys, "psq", "search", "--x", "2")[0] == 2
    assert run_cli(capsys, "psq", "count", "--x", "5")[0] == 2
    assert run_cli(capsys, "charsum", "sum", "--from", "0", "--len", "10")[0] == 2
    assert run_cli(capsys, "psq", "count", "--x", "5", "--from", "-1", "--len", "10")[0] == 2
    with pytest.raises(SystemExit) as info:
        cli.main(["psq", "unknown"])
    assert info.value.code == 2


def test_budget_exhaustion_exits_three(capsys):
    code, out = run_cli(capsys, "psq", "count", "--x", "7", "--from", "0", "--len", "1000000", "--budget", "10")
    assert code == 3
    assert out == ""


@pytest.mark.parametrize("argv", [
    ["psq", "search", "--x", "13"],
    ["psq", "pigeonhole", "--x", "13"],
    ["psq", "table", "--x", "19"],
    ["ppw", "search", "--g", "3", "--x", "23"],
    ["ppw", "weighted-sum", "--g", "2", "--x", "13"],
    ["ppw", "table", "--g", "2", "--x", "7"],
])
def test_search_commands_respect_budget(capsys, argv):
    code, out = run_cli(capsys, *argv, "--budget", "1")
    assert code == 3
    assert out == ""


def test_csv_writes_complex_values_as_json(capsys):
    code, out = run_cli(capsys, "ppw", "weighted-sum", "--g", "2", "--x", "3", "--format", "csv")
    assert code == 0
    frame = pd.read_csv(io.StringIO(out), dtype=str)
    value = json.loads(frame.set_index("field").loc["value", "value"])
    assert set(value) == {"im", "re"}
    assert value["im"] == pytest.approx(0.0, abs=1e-9)


def test_scan_limit_exhaustion_exits_three(capsys):
    assert run_cli(capsys, "psq", "pigeonhole", "--x", "13", "--scan-limit", "20")[0] == 3


def test_run_config_validation():
    with pytest.raises(PreconditionError):
        RunConfig(group="ppw", command="count", g=2, x=13).validate()
    with pytest.raises(PreconditionError):
        RunConfig(group="ppw", command="search", g=2, x=7, variant="theorem1").validate()
    with pytest.raises(PreconditionError):
        RunConfig(group="charsum", command="nope").validate()


def test_identity_failure_exit_code(monkeypatch):
    from utils.reports import IdentityCheck

    def failing(config, budget):
        return {}, [IdentityCheck.exact("broken", 1, 2)], None

    monkeypatch.setitem(cli.HANDLERS, ("psq", "search"), failing)
    report, code = dispatch(RunConfig(group="psq", command="search", x=5))
    assert code == 1 and not report.all_passed
    report, code = dispatch(RunConfig(group="psq", command="search", x=5, exploratory=True))
    assert code == 0 and report.exploratory


def test_payload_independent_of_workers():
    base = dict(group="psq", command="count", x=7, window=Window(0, 200000), bins=8)
    one, _ = dispatch(RunConfig(**base, workers=1))
    many, _ = dispatch(RunConfig(**base, workers=4))
    assert canonical_json(one.payload()) == canonical_json(many.payload())


def test_verify_identity_commands():
    report, code = dispatch(RunConfig(group="psq", command="verify-identity", x=5, window=Window(0, 10**5), samples=3))
    assert code == 0 and len(report.identity_checks) > 3

    report, code = dispatch(RunConfig(group="ppw", command="verify-identity", g=2, x=7, samples=3))
    assert code == 0
    assert report.outputs["count_pbar_period"] == exact_pbar(2, 7)


def exact_pbar(g, x):
    from utils.pseudopower import exact_count_period
    return exact_count_period(g, x).count_pbar


def test_charsum_commands():
    report, code = dispatch(RunConfig(group="charsum", command="sum", q=15, window=Window(0, 7)))
    assert code == 0 and report.outputs["value"] == 2

    report, code = dispatch(RunConfig(group="charsum", command="sum", x=5, window=Window(0, 240)))
    assert (report.outputs["value"], report.outputs["count_sbar"]) == (16, 4)

    report, _ = dispatch(RunConfig(group="charsum", command="bounds", x=13, f=15015, window=Window(0, 10**6)))
    assert report.outputs["gr"] is None
    assert "all prime factors of q are at most N^(1/9)" in report.outputs["gr_failed_preconditions"]

    report, _ = dispatch(RunConfig(group="charsum", command="choose-r", x=10**44, variant="theorem1"))
    assert report.outputs["r"] == 2


def test_table_commands():
    report, code = dispatch(RunConfig(group="psq", command="table", x=7))
    assert code == 0 and report.table["n_x"].tolist() == [73, 241, 1009]
    report, _ = dispatch(RunConfig(group="ppw", command="profile", g=2, x=13))
    assert report.outputs["I_g"] == 2
