"""Acceptance suite: one test per release criterion.

Each test prints `ACCEPTANCE PASS <criterion>` when its assertions hold
(run with `pytest -s tests/test_acceptance.py` to see the lines).
"""

import json
import random
import time
from contextlib import contextmanager
from decimal import Decimal
from pathlib import Path

import httpx
import pytest
from click.testing import CliRunner
from fastapi.testclient import TestClient

from statcommons.api import ApiConfig, RemoteEndpoint, create_app, federated_series
from statcommons.cli import main as cli_main
from statcommons.etl import IngestStatus, fetch, ingest, load_source_spec, normalize, parse
from statcommons.kg import load_place_registry
from statcommons.platform import Platform
from statcommons.privacy import (
    Decision,
    DpParams,
    GeneralizationHierarchy,
    MicrodataTable,
    anonymize_k,
    check_k_anonymity,
    check_l_diversity,
    check_t_closeness,
    debiased_proportion,
    gate,
    infer_risk,
    laplace_noise,
    randomized_response_bits,
    reid_risk,
)
from statcommons.privacy.microdata import Attribute, Role

from . import oracles
from .conftest import random_microdata
from .test_federation import ServerThread, free_port, make_remote_platform

DATA = Path(__file__).parent / "data"
SOURCES = DATA / "sources"
REGISTRY = (DATA / "places.csv").read_text(encoding="utf-8")


@contextmanager
def criterion(name: str):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE FAIL {name}")
        raise
    print(f"ACCEPTANCE PASS {name}")


def fresh_platform() -> Platform:
    platform = Platform.in_memory()
    load_place_registry(platform.kg, REGISTRY)
    return platform


# -- criterion 1: privacy oracle equivalence ---------------------------------


def test_privacy_oracle_equivalence():
    with criterion("privacy oracle equivalence (100 tables, exact)"):
        started = time.monotonic()
        rng = random.Random(987654321)
        for trial in range(100):
            n = rng.randrange(1, 201)
            n_qi = rng.randrange(0, 5)
            table = random_microdata(rng, n, n_qi, n_sensitive_values=3)
            columns = table.attribute_names()
            rows = table.rows
            qi = [f"q{i}" for i in range(n_qi)]

            assert reid_risk(table, qi).per_record == tuple(
                oracles.brute_reid_probs(rows, columns, qi)
            )
            assert infer_risk(table, qi, "condition").per_record == tuple(
                oracles.brute_infer_probs(rows, columns, qi, "condition")
            )
            k = rng.randrange(1, 7)
            assert check_k_anonymity(table, qi, k) == oracles.brute_k_anonymous(
                rows, columns, qi, k
            )
            l = rng.randrange(1, 4)
            assert check_l_diversity(
                table, qi, "condition", l
            ) == oracles.brute_l_diverse(rows, columns, qi, "condition", l)
            t = rng.choice([0.0, 0.1, 0.2, 0.25, 1 / 3, 0.5, 0.75, 1.0])
            assert check_t_closeness(
                table, qi, "condition", t
            ) == oracles.brute_t_close(rows, columns, qi, "condition", t)
        elapsed = time.monotonic() - started
        assert elapsed < 30, f"took {elapsed:.1f}s"


# -- criterion 2: paper-anchored gate scenario --------------------------------


def exposure_table(at_risk_records: int, n: int = 100) -> MicrodataTable:
    """`at_risk_records` records sit in small classes whose sensitive value is
    uniform (inference prob 1.0, reid prob <= 0.5); the rest share one large
    mixed class far below the cutoffs."""
    rows = []
    remaining = at_risk_records
    group = 0
    while remaining > 0:
        size = 3 if remaining % 2 == 1 else 2  # odd remainders use one triple
        for _ in range(size):
            rows.append((f"exposed-{group}", "S"))
        remaining -= size
        group += 1
    filler = n - len(rows)
    for i in range(filler):
        rows.append(("common", ["A", "B", "C"][i % 3]))
    assert len(rows) == n
    return MicrodataTable(
        attributes=(
            Attribute("profile", Role.QUASI_IDENTIFIER),
            Attribute("condition", Role.SENSITIVE),
        ),
        rows=tuple(rows),
    )


def test_gate_scenario_thirty_percent():
    with criterion("gate scenario: 30% at 0.9 rejects, 29% publishes"):
        reject_table = exposure_table(30)
        report = gate(reject_table, ["profile"], ["condition"])
        infer_fraction = report.fraction_at_risk["attribute-inference:condition"]
        assert infer_fraction == pytest.approx(0.30)
        assert report.decision == Decision.REJECT
        assert any("attribute-inference:condition" in r for r in report.reasons)
        # re-identification alone does not trip: exposed classes have size >= 2
        assert report.fraction_at_risk["re-identification"] < 0.30

        publish_table = exposure_table(29)
        report = gate(publish_table, ["profile"], ["condition"])
        assert report.fraction_at_risk["attribute-inference:condition"] == pytest.approx(0.29)
        assert report.decision == Decision.PUBLISH


# -- criterion 3: anonymization post-conditions --------------------------------


def test_anonymization_postconditions():
    with criterion("anonymize_k satisfies k-anonymity; generalization monotone"):
        rng = random.Random(24601)
        for trial in range(20):
            table = random_microdata(rng, rng.randrange(1, 120), rng.randrange(1, 4))
            qi = table.quasi_identifiers()
            hierarchies = {}
            for name in qi:
                values = sorted(set(table.column(name)))
                level1 = {v: f"g{int(v) % 2}" for v in values}
                level2 = {g: "*" for g in set(level1.values())}
                hierarchies[name] = GeneralizationHierarchy(
                    attribute=name, levels=(level1, level2)
                )
            # monotonicity of each attribute's ladder
            from statcommons.privacy import generalize

            for name in qi:
                sizes = [
                    check_k_anonymity(
                        generalize(table, name, hierarchies[name], level), qi, 1
                    )[1]
                    for level in range(3)
                ]
                assert sizes == sorted(sizes), f"not monotone: {sizes}"
            for k in (2, 3, 5):
                result, _plan = anonymize_k(table, qi, k, hierarchies, qi)
                if result.n_rows:
                    ok, min_size = check_k_anonymity(result, qi, k)
                    assert ok, f"k={k} violated, min class {min_size}"


# -- criterion 4: DP mechanisms -------------------------------------------------


def test_dp_mechanisms():
    with criterion("laplace moments, randomized response rates, debiasing"):
        noise = laplace_noise(DpParams(epsilon=1.0, sensitivity=1.0, seed=20240809), 100_000)
        mean = sum(noise) / len(noise)
        var = sum((x - mean) ** 2 for x in noise) / len(noise)
        assert abs(mean) <= 0.02, f"mean {mean}"
        assert abs(var - 2.0) <= 0.10, f"variance {var}"  # 5% of 2

        bits = [i % 2 for i in range(100_000)]
        reported = randomized_response_bits(bits, 0.0, seed=4242)
        flip_rate = sum(1 for b, r in zip(bits, reported) if b != r) / len(bits)
        assert abs(flip_rate - 0.5) <= 0.01, f"flip rate {flip_rate}"

        epsilon = 1.0
        true_proportion = 0.37
        truth = [1 if i < 37_000 else 0 for i in range(100_000)]
        reported = randomized_response_bits(truth, epsilon, seed=77)
        estimate = debiased_proportion(reported, epsilon)
        assert abs(estimate - true_proportion) <= 0.02, f"estimate {estimate}"


# -- criterion 5: ingestion idempotence and conservation -------------------------


def test_ingestion_idempotence_and_conservation():
    with criterion("re-ingest skips with byte-identical export; rows conserved"):
        platform = fresh_platform()
        everything = (
            ["mun/2927408", "mun/3106200", "mun/3304557", "mun/3550308"],
            ["var/life_expectancy"],
        )
        spec = load_source_spec(SOURCES / "ipea_life_exp.yaml")
        first = ingest(spec, platform)
        assert first.status == IngestStatus.INGESTED
        before = platform.stats.export_csv(*everything)
        second = ingest(spec, platform)
        assert second.status == IngestStatus.SKIPPED_UNCHANGED
        after = platform.stats.export_csv(*everything)
        assert before == after

        # conservation on both aggregate fixtures
        for name, known in (
            ("ipea_life_exp.yaml", {"var/life_expectancy"}),
            ("ibge_indicators.yaml", {"var/population", "var/fertility_rate"}),
        ):
            src = load_source_spec(SOURCES / name)
            table = parse(fetch(src).payload, src.format)
            observations, rejects = normalize(
                table, src.mapping, platform.kg, "prov-acceptance", known
            )
            assert len(observations) + len(rejects) == table.n_rows


# -- criterion 6: round-trip fidelity --------------------------------------------


def test_round_trip_fidelity():
    with criterion("normalize -> ingest -> export reproduces values exactly"):
        platform = fresh_platform()
        spec = load_source_spec(SOURCES / "ipea_life_exp.yaml")

        # independent derivation of the expected tuples
        table = parse(fetch(spec).payload, spec.format)
        expected_obs, rejects = normalize(
            table, spec.mapping, platform.kg, "ignored", {"var/life_expectancy"}
        )
        assert rejects == []
        expected = {
            (o.entity, o.variable, str(o.date), o.value) for o in expected_obs
        }

        ingest(spec, platform)
        entities = sorted({o.entity for o in expected_obs})
        payload = platform.stats.export_csv(entities, ["var/life_expectancy"])
        lines = payload.decode("utf-8").splitlines()[1:]
        exported = set()
        for line in lines:
            cells = line.split(",")
            exported.add((cells[0], cells[2], cells[3], Decimal(cells[4])))
        assert exported == expected

        again = platform.stats.export_csv(entities, ["var/life_expectancy"])
        assert again == payload


# -- criterion 7: privacy routing -------------------------------------------------


def test_privacy_routing():
    with criterion("gated microdata writes nothing; ledger records the rejection"):
        platform = fresh_platform()
        entry = ingest(load_source_spec(SOURCES / "datasus_risky.yaml"), platform)
        assert entry.status == IngestStatus.REJECTED_PRIVACY
        assert platform.stats.all_observations() == []
        ledger = platform.ledger.entries()
        assert len(ledger) == 1
        assert ledger[0].status == IngestStatus.REJECTED_PRIVACY
        assert ledger[0].gate["decision"] == "reject"

        # the publish path records its decision too
        ok_entry = ingest(load_source_spec(SOURCES / "datasus_safe.yaml"), platform)
        assert ok_entry.status == IngestStatus.INGESTED
        assert ok_entry.gate["decision"] == "publish"
        assert len(platform.stats.all_observations()) > 0


# -- criterion 8: federation -------------------------------------------------------


def test_federation_acceptance():
    with criterion("federation: remote tag, local short-circuit, downed remote"):
        started = time.monotonic()
        remote_platform = make_remote_platform()
        remote_app = create_app(remote_platform, ApiConfig())
        remote_app.state.request_count = 0

        @remote_app.middleware("http")
        async def count_requests(request, call_next):
            remote_app.state.request_count += 1
            return await call_next(request)

        remote_port = free_port()
        local_port = free_port()
        config = ApiConfig(
            remotes=(RemoteEndpoint("upstream", f"http://127.0.0.1:{remote_port}"),),
            request_timeout_ms=2000,
        )

        empty_local = fresh_platform()
        local_app = create_app(empty_local, config)

        with ServerThread(remote_app, remote_port), ServerThread(local_app, local_port):
            # empty local store: remote's points, tagged with the remote name
            r = httpx.get(
                f"http://127.0.0.1:{local_port}/api/observations/series",
                params={"entity": "mun/3106200", "variable": "var/life_expectancy"},
                timeout=5.0,
            )
            assert r.status_code == 200
            assert r.json()["origin"] == "remote:upstream"
            assert len(r.json()["points"]) == 3
            assert remote_app.state.request_count == 1

            # local data present: zero remote requests
            filled = fresh_platform()
            ingest(load_source_spec(SOURCES / "ipea_life_exp.yaml"), filled)
            count_before = remote_app.state.request_count
            local_result = federated_series(
                filled, "mun/3106200", "var/life_expectancy", config
            )
            assert local_result.origin == "local"
            assert remote_app.state.request_count == count_before

        # remote unreachable: 200 with a warning naming the remote
        downed = ApiConfig(
            remotes=(RemoteEndpoint("upstream", f"http://127.0.0.1:{remote_port}"),),
            request_timeout_ms=500,
        )
        client = TestClient(create_app(fresh_platform(), downed))
        r = client.get(
            "/api/observations/series",
            params={"entity": "mun/3106200", "variable": "var/life_expectancy"},
        )
        assert r.status_code == 200
        assert r.json()["points"] == []
        assert any("upstream" in w for w in r.json()["warnings"])

        elapsed = time.monotonic() - started
        assert elapsed < 10, f"took {elapsed:.1f}s"


# -- criterion 9: API/CLI parity ----------------------------------------------------


def test_api_cli_parity(tmp_path):
    with criterion("download endpoint and export subcommand are byte-identical"):
        runner = CliRunner()
        store = tmp_path / "store"
        result = runner.invoke(
            cli_main,
            ["kg", "load-places", "--registry", str(DATA / "places.csv"), "--store", str(store)],
        )
        assert result.exit_code == 0
        result = runner.invoke(
            cli_main,
            ["ingest", "--spec", str(SOURCES / "ipea_life_exp.yaml"), "--store", str(store)],
        )
        assert result.exit_code == 0

        out_file = tmp_path / "cli_export.csv"
        result = runner.invoke(
            cli_main,
            [
                "export",
                "--store", str(store),
                "--entities", "mun/3106200,mun/3550308",
                "--variables", "var/life_expectancy",
                "--from", "2019",
                "--to", "2020",
                "--out", str(out_file),
            ],
        )
        assert result.exit_code == 0

        platform = Platform.open(store)
        client = TestClient(create_app(platform, ApiConfig()))
        r = client.get(
            "/api/download",
            params={
                "entities": "mun/3106200,mun/3550308",
                "variables": "var/life_expectancy",
                "from": "2019",
                "to": "2020",
            },
        )
        assert r.status_code == 200
        assert out_file.read_bytes() == r.content

        # error envelopes carry {status, code, message} with the declared codes
        checks = [
            ("/api/observations/series", {"variable": "x"}, 400, "missing_parameter"),
            (
                "/api/observations/series",
                {"entity": "mun/3106200", "variable": "var/nope"},
                404,
                "unknown_variable",
            ),
            (
                "/api/observations/series",
                {"entity": "mun/0000000", "variable": "var/life_expectancy"},
                404,
                "unknown_entity",
            ),
            ("/api/node/mun/0000000/triples", {}, 404, "unknown_node"),
            ("/api/place/resolve", {}, 400, "empty_descriptor"),
            ("/api/place/resolve", {"name": "Atlantis"}, 404, "not_found"),
            ("/api/download", {"entities": "", "variables": "v"}, 400, "missing_parameter"),
            ("/api/place/country/bra/children", {}, 400, "missing_parameter"),
        ]
        for path, params, status, code in checks:
            response = client.get(path, params=params)
            assert response.status_code == status, (path, response.status_code)
            body = response.json()
            assert body["status"] == status
            assert body["code"] == code
            assert isinstance(body["message"], str) and body["message"]
