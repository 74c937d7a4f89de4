"""Command line entry points: ingest, privacy-check, serve, export, kg.

Exit codes: 0 success, 1 domain failure (e.g. privacy reject, unknown id),
2 usage error.  Machine output goes to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click
import yaml

from .api.config import load_api_config
from .api.server import create_app
from .errors import CommonsError
from .etl.ledger import IngestStatus
from .etl.pipeline import ingest as run_ingest
from .etl.spec import load_source_spec
from .kg import EntityDescriptor, PlaceLevel, ResolutionStatus, load_place_registry
from .platform import Platform
from .privacy.classify import classify_attributes, load_lexicon
from .privacy.microdata import Role, microdata_from_csv
from .privacy.risk import Decision, RiskThresholds, gate


def _open_platform(store: str | None, preference: list[str] | None = None) -> Platform:
    if store is None:
        return Platform.in_memory(preference)
    return Platform.open(Path(store), preference)


def _fail(message: str) -> None:
    click.echo(f"error: {message}", err=True)
    sys.exit(1)


@click.group()
def main() -> None:
    """Statistical data commons operations."""


@main.command()
@click.option("--spec", "spec_path", required=True, type=click.Path(exists=True))
@click.option("--store", "store_dir", type=click.Path(), default=None)
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
def ingest(spec_path: str, store_dir: str | None, config_path: str | None) -> None:
    """Fetch, check, normalize, and store one declared source."""
    config = load_api_config(config_path) if config_path else None
    preference = list(config.source_preference) if config else None
    try:
        spec = load_source_spec(spec_path)
        platform = _open_platform(store_dir, preference)
        entry = run_ingest(spec, platform)
        if store_dir is not None:
            platform.save(Path(store_dir))
    except CommonsError as exc:
        _fail(str(exc))
    click.echo(entry.to_json())
    if entry.status == IngestStatus.FAILED:
        sys.exit(1)


@main.command("privacy-check")
@click.option("--input", "input_path", required=True, type=click.Path(exists=True))
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
def privacy_check(input_path: str, config_path: str | None) -> None:
    """Run the disclosure-risk gate over a microdata CSV; exit 1 on reject."""
    doc = {}
    if config_path:
        doc = yaml.safe_load(Path(config_path).read_text(encoding="utf-8")) or {}
    thresholds_doc = doc.get("thresholds", {})
    try:
        thresholds = RiskThresholds(
            k=thresholds_doc.get("k", 1),
            l=thresholds_doc.get("l", 1),
            t=thresholds_doc.get("t", 1.0),
            attack_prob=thresholds_doc.get("attack_prob", 0.90),
            pop_fraction=thresholds_doc.get("pop_fraction", 0.30),
        )
    except ValueError as exc:
        _fail(str(exc))

    content = Path(input_path).read_bytes()
    header = content.decode("utf-8").splitlines()[0].split(",") if content else []
    lexicon = load_lexicon(doc["lexicon"]) if doc.get("lexicon") else None
    suggested = classify_attributes(header, lexicon=lexicon)
    overrides = {
        name: Role.parse(role) for name, role in (doc.get("roles") or {}).items()
    }
    roles = {
        name: overrides.get(name, suggestion)
        for name, suggestion in zip(header, suggested)
    }
    try:
        table = microdata_from_csv(content, roles)
        report = gate(
            table,
            qi=doc.get("quasi_identifiers", table.quasi_identifiers()),
            sensitives=doc.get("sensitive", table.sensitive_attributes()),
            thresholds=thresholds,
        )
    except (CommonsError, ValueError) as exc:
        _fail(str(exc))
    click.echo(report.render_text())
    if report.decision == Decision.REJECT:
        sys.exit(1)


@main.command()
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--store", "store_dir", type=click.Path(), default=None)
def serve(config_path: str, store_dir: str | None) -> None:
    """Run the HTTP service until interrupted."""
    import uvicorn

    config = load_api_config(config_path)
    store = store_dir or (str(config.store_dir) if config.store_dir else None)
    if store is None:
        _fail("no store directory: pass --store or set `store` in the config")
    platform = _open_platform(store, list(config.source_preference))
    app = create_app(platform, config)
    click.echo(f"listening on {config.host}:{config.port}", err=True)
    uvicorn.run(app, host=config.host, port=config.port, log_level="warning")


@main.command()
@click.option("--store", "store_dir", required=True, type=click.Path(exists=True))
@click.option("--entities", required=True, help="comma-separated entity ids")
@click.option("--variables", required=True, help="comma-separated variable ids")
@click.option("--from", "date_from", default=None)
@click.option("--to", "date_to", default=None)
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--config", "config_path", type=click.Path(exists=True), default=None)
def export(
    store_dir: str,
    entities: str,
    variables: str,
    date_from: str | None,
    date_to: str | None,
    out_path: str,
    config_path: str | None,
) -> None:
    """Write the selection as CSV, byte-identical to the download endpoint."""
    config = load_api_config(config_path) if config_path else None
    preference = list(config.source_preference) if config else None
    platform = _open_platform(store_dir, preference)
    date_range = None
    if date_from or date_to:
        date_range = (date_from or "0001", date_to or "9999")
    try:
        payload = platform.stats.export_csv(
            [e for e in entities.split(",") if e],
            [v for v in variables.split(",") if v],
            date_range,
        )
    except CommonsError as exc:
        _fail(str(exc))
    Path(out_path).write_bytes(payload)
    click.echo(f"wrote {len(payload)} bytes to {out_path}", err=True)


@main.group()
def kg() -> None:
    """Knowledge graph reads."""


@kg.command("load-places")
@click.option("--registry", "registry_path", required=True, type=click.Path(exists=True))
@click.option("--store", "store_dir", required=True, type=click.Path())
def kg_load_places(registry_path: str, store_dir: str) -> None:
    """Bootstrap the place registry CSV into a store."""
    store_path = Path(store_dir)
    platform = (
        Platform.open(store_path) if (store_path / "nodes").exists() else Platform.in_memory()
    )
    try:
        count = load_place_registry(
            platform.kg, Path(registry_path).read_text(encoding="utf-8")
        )
    except CommonsError as exc:
        _fail(str(exc))
    platform.save(store_path)
    click.echo(f"loaded {count} places", err=True)


@kg.command("resolve")
@click.option("--store", "store_dir", required=True, type=click.Path(exists=True))
@click.option("--name", default=None)
@click.option("--level", default=None)
@click.option("--ancestor", default=None)
@click.option("--code", default=None)
def kg_resolve(store_dir, name, level, ancestor, code) -> None:
    """Resolve an entity by description; prints one id per candidate."""
    platform = _open_platform(store_dir)
    try:
        descriptor = EntityDescriptor(
            name=name,
            level=PlaceLevel.parse(level) if level else None,
            ancestor_name=ancestor,
            code=code,
        )
        resolution = platform.kg.resolve(descriptor)
    except CommonsError as exc:
        _fail(str(exc))
    if resolution.status == ResolutionStatus.NOT_FOUND:
        _fail("not found")
    for candidate in resolution.candidates:
        click.echo(candidate)


@kg.command("triples")
@click.argument("node_id")
@click.option("--store", "store_dir", required=True, type=click.Path(exists=True))
@click.option("--direction", type=click.Choice(["out", "in"]), default="out")
@click.option("--predicate", default=None)
def kg_triples(node_id, store_dir, direction, predicate) -> None:
    """Print triples of a node, one per line."""
    platform = _open_platform(store_dir)
    try:
        triples = (
            platform.kg.triples_out(node_id, predicate)
            if direction == "out"
            else platform.kg.triples_in(node_id, predicate)
        )
    except CommonsError as exc:
        _fail(str(exc))
    for t in triples:
        obj = t.object if isinstance(t.object, str) else t.object.render()
        click.echo(f"{t.subject}\t{t.predicate}\t{obj}")


if __name__ == "__main__":
    main()
