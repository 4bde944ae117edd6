import orjson
import pytest
from click.testing import CliRunner

from gradus.commands import batch, verify_type
from gradus.constructions.schemas import Mode
from gradus.main import cli
from gradus.reports.schemas import Command, RunConfig
from gradus.reports.services import ReportService


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


def invoke(runner, *arguments):
    return runner.invoke(cli, list(arguments))


def output_json(result):
    return orjson.loads(result.stdout)


def test_dim_of_s(runner):
    result = invoke(runner, "dim", "--ring", "S", "--type", "2,2,2,2", "--bidegree", "5,4")

    assert result.exit_code == 0
    assert result.stdout.strip() == "735"


def test_dim_of_projective_space(runner):
    result = invoke(runner, "dim", "--ring", "P3", "--bidegree", "8")

    assert result.stdout.strip() == "165"


def test_dim_needs_a_type_for_s(runner):
    result = invoke(runner, "dim", "--ring", "S", "--bidegree", "1,1")

    assert result.exit_code == 2
    assert "Error:" in result.stderr


def test_verify_type_rejects_mixed_parity(runner):
    result = invoke(runner, "verify-type", "--type", "1,2,2,2")

    assert result.exit_code == 2
    assert result.stdout == ""


def test_verify_type_rejects_composite_characteristic(runner):
    result = invoke(runner, "verify-type", "--type", "2,2,2,2", "--field", "fp:8")

    assert result.exit_code == 2


def test_verify_type_trivially_rational(runner):
    result = invoke(runner, "verify-type", "--type", "0,0,0,0")

    assert result.exit_code == 0
    report = output_json(result)
    assert report["schema"] == 1
    assert report["summary"]["verdicts"] == {"TRIVIALLY-RATIONAL": 1}


def test_verify_type_full(runner):
    result = invoke(runner, "verify-type", "--type", "2,2,2,2")

    assert result.exit_code == 0
    record = output_json(result)["records"][0]
    assert record["job_id"] == "verify-type:2,2,2,2:fp:65537:explicit"
    assert record["verdict"] == "FULL"
    assert record["certificate"]["prop"]["certificate"]["rows"] == 735


def test_verify_type_writes_a_report(runner, tmp_path):
    path = tmp_path / "out" / "report.json"
    result = invoke(runner, "verify-type", "--type", "0,0,0,0", "--type", "0,0,0,2", "--out", str(path))

    assert result.exit_code == 0
    assert "verify-type:0,0,0,2:fp:65537:explicit: FULL" in result.stdout
    report = ReportService().read(path)
    assert report.config.types == ["0,0,0,0", "0,0,0,2"]
    assert report.summary.total == 2


def test_verify_type_cache_hits(runner, tmp_path):
    arguments = ["verify-type", "--type", "0,0,0,2", "--cache", str(tmp_path / "cache")]

    first = output_json(invoke(runner, *arguments))
    second = output_json(invoke(runner, *arguments))

    assert first["records"] == second["records"]
    assert [job["cache_hit"] for job in second["runtime"]["jobs"]] == [True]


def test_lefschetz(runner):
    result = invoke(runner, "lefschetz", "--degrees", "2,2,2")

    assert result.exit_code == 0
    assert "h=[1, 3, 3, 1]" in result.stderr
    certificate = output_json(result)["records"][0]["certificate"]
    assert certificate["hilbert"] == [1, 3, 3, 1]
    assert certificate["sl_element"] == ["1", "1", "1"]
    assert certificate["checks"][-1]["is_sl"]


@pytest.mark.parametrize("degrees", ["0,2", "2,x"])
def test_lefschetz_rejects_degrees(runner, degrees):
    result = invoke(runner, "lefschetz", "--degrees", degrees)

    assert result.exit_code == 2


def test_nl_classical(runner):
    result = invoke(runner, "nl-classical", "--degree", "4")

    assert result.exit_code == 0
    record = output_json(result)["records"][0]
    assert record["verdict"] == "FULL"
    assert record["certificate"]["target_degree"] == 8


def test_nl_classical_rejects_small_degree(runner):
    result = invoke(runner, "nl-classical", "--degree", "3")

    assert result.exit_code == 2
    assert "Error:" in result.stderr


def test_negative_control(runner):
    result = invoke(runner, "negative-control", "--type", "0,0,0,6")

    assert result.exit_code == 0
    assert output_json(result)["records"][0]["verdict"] == "AGREES"


@pytest.mark.parametrize("jobs", ["1", "2"])
def test_batch(runner, tmp_path, jobs):
    arguments = [
        "batch", "--max-t", "-2", "--max-degree", "2", "--no-families",
        "--cache", str(tmp_path / "cache"), "--jobs", jobs,
    ]

    first = invoke(runner, *arguments)
    second = invoke(runner, *arguments)

    assert first.exit_code == 0
    assert f"2 types, {jobs} worker(s)" in first.stderr
    report = output_json(second)
    assert [record["job_id"].split(":")[1] for record in report["records"]] == ["0,0,0,0", "0,0,0,2"]
    assert all(job["cache_hit"] for job in report["runtime"]["jobs"])
    assert report["records"] == output_json(first)["records"]


def test_run_config_flags_reproduce_verify_type():
    config = RunConfig(
        command=Command.VERIFY_TYPE,
        types=["2,2,2,2", "0,2,2,4"],
        field="qq",
        mode=Mode.RANDOM,
        seed=3,
        jobs=2,
        steps=True,
        drop=["g33"],
    )

    params = verify_type.make_context("verify-type", config.flags()).params

    assert params["types"] == ("2,2,2,2", "0,2,2,4")
    assert params["field"] == "qq"
    assert params["mode"] == "random"
    assert params["seed"] == 3
    assert params["jobs"] == 2
    assert params["steps"]
    assert params["drop"] == ("g33",)


def test_run_config_flags_reproduce_batch():
    config = RunConfig(command=Command.BATCH, max_t=4, max_degree=3, families=False, cache="cache")

    params = batch.make_context("batch", config.flags()).params

    assert params["max_t"] == 4
    assert params["max_degree"] == 3
    assert not params["families"]
    assert params["cache"] == "cache"
