import json
from pathlib import Path

import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from statcommons.api import ApiConfig, create_app
from statcommons.cli import main
from statcommons.platform import Platform

DATA = Path(__file__).parent / "data"
SOURCES = DATA / "sources"


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def store_dir(tmp_path, runner):
    store = tmp_path / "store"
    result = runner.invoke(
        main,
        ["kg", "load-places", "--registry", str(DATA / "places.csv"), "--store", str(store)],
    )
    assert result.exit_code == 0, result.output + result.stderr
    return store


def invoke_ingest(runner, store, spec_name):
    return runner.invoke(
        main, ["ingest", "--spec", str(SOURCES / spec_name), "--store", str(store)]
    )


def test_unknown_flag_exits_2(runner):
    result = runner.invoke(main, ["ingest", "--bogus"])
    assert result.exit_code == 2


def test_missing_subcommand_usage(runner):
    result = runner.invoke(main, ["no-such-command"])
    assert result.exit_code == 2


def test_ingest_and_skip(runner, store_dir):
    first = invoke_ingest(runner, store_dir, "ipea_life_exp.yaml")
    assert first.exit_code == 0, first.stderr
    entry = json.loads(first.output)
    assert entry["status"] == "Ingested"
    assert entry["counts"]["observations"] == 12

    second = invoke_ingest(runner, store_dir, "ipea_life_exp.yaml")
    assert second.exit_code == 0
    assert json.loads(second.output)["status"] == "SkippedUnchanged"


def test_ingest_persists_store(runner, store_dir):
    invoke_ingest(runner, store_dir, "ipea_life_exp.yaml")
    platform = Platform.open(store_dir)
    series = platform.stats.series("mun/3106200", "var/life_expectancy")
    assert len(series.points) == 3
    assert (store_dir / "nodes" / "nodes.jsonl").exists()
    assert (store_dir / "triples" / "triples.jsonl").exists()
    assert (store_dir / "observations" / "observations.jsonl").exists()
    assert (store_dir / "ledger").exists()


def test_privacy_check_reject_exit_1(runner):
    result = runner.invoke(
        main, ["privacy-check", "--input", str(SOURCES / "datasus_micro_risky.csv")]
    )
    assert result.exit_code == 1
    assert "decision: REJECT" in result.output
    assert "re-identification" in result.output


def test_privacy_check_publish_exit_0(runner, tmp_path):
    config = tmp_path / "roles.yaml"
    config.write_text("roles:\n  consultas: other\n", encoding="utf-8")
    result = runner.invoke(
        main,
        [
            "privacy-check",
            "--input",
            str(SOURCES / "datasus_micro_safe.csv"),
            "--config",
            str(config),
        ],
    )
    assert result.exit_code == 0, result.output + result.stderr
    assert "decision: PUBLISH" in result.output


def test_export_matches_api_download(runner, store_dir, tmp_path):
    invoke_ingest(runner, store_dir, "ipea_life_exp.yaml")
    out_file = tmp_path / "export.csv"
    result = runner.invoke(
        main,
        [
            "export",
            "--store",
            str(store_dir),
            "--entities",
            "mun/3106200,mun/3550308",
            "--variables",
            "var/life_expectancy",
            "--out",
            str(out_file),
        ],
    )
    assert result.exit_code == 0, result.stderr

    platform = Platform.open(store_dir)
    client = TestClient(create_app(platform, ApiConfig()))
    r = client.get(
        "/api/download",
        params={"entities": "mun/3106200,mun/3550308", "variables": "var/life_expectancy"},
    )
    assert out_file.read_bytes() == r.content


def test_export_unknown_everything_gives_header(runner, store_dir, tmp_path):
    out_file = tmp_path / "empty.csv"
    result = runner.invoke(
        main,
        [
            "export",
            "--store",
            str(store_dir),
            "--entities",
            "mun/3106200",
            "--variables",
            "var/life_expectancy",
            "--out",
            str(out_file),
        ],
    )
    assert result.exit_code == 0
    assert out_file.read_bytes() == b"entity_id,entity_name,variable,date,value,unit,provenance\n"


def test_kg_resolve_and_triples(runner, store_dir):
    result = runner.invoke(
        main,
        ["kg", "resolve", "--store", str(store_dir), "--name", "Bom Jesus"],
    )
    assert result.exit_code == 0
    assert result.output.splitlines() == ["mun/2201919", "mun/4302303"]

    not_found = runner.invoke(
        main, ["kg", "resolve", "--store", str(store_dir), "--name", "Atlantis"]
    )
    assert not_found.exit_code == 1

    triples = runner.invoke(
        main,
        ["kg", "triples", "mun/3106200", "--store", str(store_dir), "--predicate", "name"],
    )
    assert triples.exit_code == 0
    assert triples.output.strip() == "mun/3106200\tname\tBelo Horizonte"
