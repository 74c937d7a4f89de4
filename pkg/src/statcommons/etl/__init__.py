from .fetch import RawArtifact, fetch
from .ledger import IngestLedger, IngestLedgerEntry, IngestStatus
from .normalize import RejectedRow, normalize, resolve_place_code
from .pipeline import ingest
from .spec import FetchSpec, FieldMapping, PrivacySettings, SourceSpec, TableFormat, load_source_spec
from .tables import GenericTable, parse

__all__ = [
    "FetchSpec",
    "FieldMapping",
    "GenericTable",
    "IngestLedger",
    "IngestLedgerEntry",
    "IngestStatus",
    "PrivacySettings",
    "RawArtifact",
    "RejectedRow",
    "SourceSpec",
    "TableFormat",
    "fetch",
    "ingest",
    "load_source_spec",
    "normalize",
    "parse",
    "resolve_place_code",
]
