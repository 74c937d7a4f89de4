"""The ingestion pipeline: fetch, skip-check, parse, gate, normalize, write.

Microdata sources pass through the disclosure-risk gate before any
normalization; a rejected table writes nothing but its ledger entry.
All store writes for one source happen under a single write batch.
"""

from __future__ import annotations

from datetime import datetime, timezone
from typing import TYPE_CHECKING

from ..errors import CommonsError, FetchFailed
from ..privacy.classify import classify_attributes, load_lexicon
from ..privacy.microdata import Attribute, MicrodataTable
from ..privacy.risk import Decision, RiskReport, gate
from ..stats import Provenance
from .fetch import RawArtifact, fetch
from .ledger import IngestLedgerEntry, IngestStatus
from .normalize import normalize
from .spec import SourceSpec
from .tables import GenericTable, parse

if TYPE_CHECKING:
    from ..platform import Platform


def _now_iso() -> str:
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat()


def microdata_from_table(table: GenericTable, spec: SourceSpec) -> MicrodataTable:
    """Assign roles to the parsed table: classifier suggestion, then overrides."""
    names = list(table.columns)
    lexicon = (
        load_lexicon(spec.privacy.lexicon_path) if spec.privacy.lexicon_path else None
    )
    suggested = classify_attributes(names, lexicon=lexicon)
    roles = {
        name: spec.privacy.roles.get(name, suggestion)
        for name, suggestion in zip(names, suggested)
    }
    attributes = tuple(Attribute(name, roles[name]) for name in names)
    return MicrodataTable(attributes=attributes, rows=table.rows)


def run_gate(table: GenericTable, spec: SourceSpec) -> RiskReport:
    micro = microdata_from_table(table, spec)
    return gate(
        micro,
        qi=micro.quasi_identifiers(),
        sensitives=micro.sensitive_attributes(),
        thresholds=spec.privacy.thresholds,
    )


def ingest(spec: SourceSpec, platform: "Platform") -> IngestLedgerEntry:
    ledger = platform.ledger

    try:
        artifact = fetch(spec)
    except FetchFailed as exc:
        entry = IngestLedgerEntry(
            source_name=spec.source_name,
            content_hash="",
            status=IngestStatus.FAILED,
            timestamp=_now_iso(),
            cause=str(exc),
        )
        ledger.append(entry)
        return entry

    if ledger.has_ingested(spec.source_name, artifact.content_hash):
        entry = IngestLedgerEntry(
            source_name=spec.source_name,
            content_hash=artifact.content_hash,
            status=IngestStatus.SKIPPED_UNCHANGED,
            timestamp=_now_iso(),
        )
        ledger.append(entry)
        return entry

    try:
        entry = _process(spec, artifact, platform)
    except CommonsError as exc:
        entry = IngestLedgerEntry(
            source_name=spec.source_name,
            content_hash=artifact.content_hash,
            status=IngestStatus.FAILED,
            timestamp=_now_iso(),
            cause=str(exc),
        )
    ledger.append(entry)
    return entry


def _process(
    spec: SourceSpec, artifact: RawArtifact, platform: "Platform"
) -> IngestLedgerEntry:
    table = parse(artifact.payload, spec.format)

    gate_summary = None
    if spec.kind_of_data == "microdata":
        report = run_gate(table, spec)
        gate_summary = report.to_machine()
        if report.decision == Decision.REJECT:
            return IngestLedgerEntry(
                source_name=spec.source_name,
                content_hash=artifact.content_hash,
                status=IngestStatus.REJECTED_PRIVACY,
                observations=0,
                unresolved_rows=len(table.rejects),
                timestamp=_now_iso(),
                cause="; ".join(report.reasons),
                gate=gate_summary,
            )

    provenance_id = f"{spec.source_name}:{artifact.content_hash[:12]}"
    declared = {v.id for v in spec.variables}
    known_variables = declared | {v.id for v in platform.stats.variables()}
    observations, rejects = normalize(
        table, spec.mapping, platform.kg, provenance_id, known_variables
    )

    with platform.write_batch():
        for variable in spec.variables:
            if not platform.stats.has_variable(variable.id):
                platform.stats.register_variable(variable)
        platform.stats.register_provenance(
            Provenance(
                id=provenance_id,
                source_name=spec.source_name,
                url=spec.fetch.location,
                import_timestamp=artifact.fetched_at,
                content_hash=artifact.content_hash,
            )
        )
        for obs in observations:
            platform.stats.put_observation(obs)

    return IngestLedgerEntry(
        source_name=spec.source_name,
        content_hash=artifact.content_hash,
        status=IngestStatus.INGESTED,
        observations=len(observations),
        unresolved_rows=len(rejects) + len(table.rejects),
        timestamp=_now_iso(),
        gate=gate_summary,
    )
