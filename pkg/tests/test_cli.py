import io
import json

import pytest

from careverse.cli import EXIT_BUDGET, EXIT_INVALID, EXIT_OK, EXIT_REJECTED, run

RULE_102 = "p=2;L=1;R=1;rule=01100110"


def call(*argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err, stdin=io.StringIO(stdin))
    return code, out.getvalue(), err.getvalue()


def test_decide_periodic_injectivity_of_102():
    code, out, _ = call("decide", "--property", "injective", "--boundary", "periodic",
                        RULE_102, "--format", "json")
    assert code == EXIT_OK
    data = json.loads(out)
    assert data["verdict"] is False
    assert data["witness"]["kind"] == "periodic"
    assert sorted(data["witness"]["tuples"]) == [["00", "00"], ["11", "11"]]
    assert {"rule", "stats", "elapsed_seconds"} <= set(data)


def test_survey_periodic_count():
    code, out, _ = call("survey", "--m", "3", "--boundary", "periodic",
                        "--property", "surjective", "--format", "json", "--no-timing")
    assert code == EXIT_OK
    assert json.loads(out)["count"] == 6


def test_extend_duplicates_entries():
    code, out, _ = call("extend", "p=2;L=1;R=0;rule=0001")
    assert code == EXIT_OK
    assert out.strip() == "p=2;L=1;R=1;rule=00000011"


def test_human_output():
    code, out, _ = call("decide", RULE_102)
    assert code == EXIT_OK and "Surjective" in out


@pytest.mark.parametrize("argv", [
    ["decide", "p=2;L=1;R=1;rule=0110"],
    ["decide", RULE_102, "--boundary", "fixed:2:0"],
    ["decide", RULE_102, "--boundary", "sideways"],
    ["decide", RULE_102, "--algorithm", "table"],
    ["decide", RULE_102, "--bogus"],
    ["survey"],
    ["witness"],
])
def test_invalid_input_exits_2(argv):
    code, _, err = call(*argv)
    assert code == EXIT_INVALID


def test_budget_exhaustion_exits_3():
    code, _, err = call("survey", "--m", "5")
    assert code == EXIT_BUDGET and "budget" in err
    big = "p=2;L=3;R=4;rule=" + "01" * 128
    code, _, _ = call("decide", big, "--property", "injective", "--algorithm", "table",
                      "--memory-budget", "0.01")
    assert code == EXIT_BUDGET


def test_no_timing_is_byte_identical():
    argv = ["decide", "p=2;L=1;R=2;rule=1100001100111100", "--property", "injective",
            "--format", "json", "--no-timing"]
    assert call(*argv)[1] == call(*argv)[1]
    argv = ["bench", "--m", "3", "--sample", "10", "--warmup", "0", "--no-timing"]
    assert call(*argv)[1] == call(*argv)[1]


@pytest.mark.parametrize("rule,prop,boundary", [
    (RULE_102, "injective", "periodic"),
    (RULE_102, "surjective", "reflective"),
    ("p=2;L=1;R=1;rule=00000100", "surjective", "global"),
    ("p=2;L=1;R=1;rule=00011110", "injective", "null"),
    ("p=2;L=1;R=2;rule=0110100110010110", "surjective", "fixed:1:10"),
])
def test_witness_round_trip(rule, prop, boundary):
    code, out, _ = call("decide", rule, "--property", prop, "--boundary", boundary,
                        "--format", "json")
    assert code == EXIT_OK
    assert json.loads(out)["witness"] is not None
    code, verified, _ = call("witness", "--verify", "-", stdin=out)
    assert code == EXIT_OK and json.loads(verified)["verified"] is True


def test_tampered_witness_rejected():
    _, out, _ = call("decide", "p=2;L=1;R=1;rule=00000100", "--format", "json")
    data = json.loads(out)
    data["witness"]["word"] = "0"
    code, verified, _ = call("witness", "--verify", "-", stdin=json.dumps(data))
    assert code == EXIT_REJECTED and json.loads(verified)["verified"] is False


def test_witness_command_emits_and_checks(tmp_path):
    code, out, _ = call("witness", RULE_102, "--property", "injective")
    assert code == EXIT_OK and json.loads(out)["verified"] is True
    path = tmp_path / "v.json"
    path.write_text(call("decide", RULE_102, "--property", "injective", "--format", "json")[1])
    assert call("witness", "--verify", str(path))[0] == EXIT_OK
    assert call("witness", "--verify", str(tmp_path / "missing.json"))[0] == EXIT_INVALID
    assert call("witness", "--verify", "-", stdin="{")[0] == EXIT_INVALID


def test_table_algorithm_and_continue_flag():
    code, out, _ = call("decide", RULE_102, "--property", "injective", "--algorithm", "table",
                        "--format", "json", "--no-timing")
    assert code == EXIT_OK and json.loads(out)["verdict"] is False
    code, out, _ = call("decide", RULE_102, "--boundary", "periodic",
                        "--continue-past-periodic", "--format", "json")
    assert json.loads(out)["verdict"] is True
    assert call("decide", RULE_102, "--continue-past-periodic")[0] == EXIT_INVALID


def test_survey_csv_and_plot(tmp_path):
    plot = tmp_path / "survey.png"
    code, out, _ = call("survey", "--m", "3", "--format", "csv", "--no-timing",
                        "--plot", str(plot))
    assert code == EXIT_OK
    assert out.splitlines() == ["m,boundary,property,count,total,seconds",
                                "3,null,surjective,6,256,"]
    assert plot.stat().st_size > 0


def test_bench_outputs(tmp_path):
    code, out, _ = call("bench", "--m", "3", "4", "--sample", "10", "--warmup", "0",
                        "--format", "csv", "--plot", str(tmp_path / "b.png"))
    assert code == EXIT_OK and len(out.splitlines()) == 3
    code, out, _ = call("bench", "--m", "4", "--sample", "20", "--node-stats",
                        "--plot", str(tmp_path / "n.png"))
    assert code == EXIT_OK and json.loads(out)["sample"] == 20
    assert (tmp_path / "b.png").exists() and (tmp_path / "n.png").exists()
