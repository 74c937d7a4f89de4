"""Append-only ingestion ledger keyed by (source name, content hash).

The ledger is the skip mechanism for incremental updates: a source whose
payload hash already has an Ingested entry is not processed again.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path


class IngestStatus(Enum):
    INGESTED = "Ingested"
    SKIPPED_UNCHANGED = "SkippedUnchanged"
    REJECTED_PRIVACY = "RejectedPrivacy"
    FAILED = "Failed"


@dataclass(frozen=True)
class IngestLedgerEntry:
    source_name: str
    content_hash: str
    status: IngestStatus
    observations: int = 0
    unresolved_rows: int = 0
    timestamp: str = ""
    cause: str | None = None
    gate: dict | None = None  # machine-readable risk summary for microdata

    def to_json(self) -> str:
        doc = {
            "source_name": self.source_name,
            "content_hash": self.content_hash,
            "status": self.status.value,
            "counts": {
                "observations": self.observations,
                "unresolved_rows": self.unresolved_rows,
            },
            "timestamp": self.timestamp,
        }
        if self.cause is not None:
            doc["cause"] = self.cause
        if self.gate is not None:
            doc["gate"] = self.gate
        return json.dumps(doc, ensure_ascii=False, sort_keys=True)

    @classmethod
    def from_json(cls, line: str) -> "IngestLedgerEntry":
        doc = json.loads(line)
        counts = doc.get("counts", {})
        return cls(
            source_name=doc["source_name"],
            content_hash=doc["content_hash"],
            status=IngestStatus(doc["status"]),
            observations=counts.get("observations", 0),
            unresolved_rows=counts.get("unresolved_rows", 0),
            timestamp=doc.get("timestamp", ""),
            cause=doc.get("cause"),
            gate=doc.get("gate"),
        )


@dataclass
class IngestLedger:
    """One JSON entry per line; file is only ever appended to."""

    path: Path | None = None
    _entries: list[IngestLedgerEntry] = field(default_factory=list)

    @classmethod
    def open(cls, path: Path | None) -> "IngestLedger":
        ledger = cls(path=path)
        if path is not None and path.exists():
            for line in path.read_text(encoding="utf-8").splitlines():
                if line.strip():
                    ledger._entries.append(IngestLedgerEntry.from_json(line))
        return ledger

    def entries(self) -> list[IngestLedgerEntry]:
        return list(self._entries)

    def append(self, entry: IngestLedgerEntry) -> None:
        self._entries.append(entry)
        if self.path is not None:
            with self.path.open("a", encoding="utf-8") as handle:
                handle.write(entry.to_json() + "\n")

    def has_ingested(self, source_name: str, content_hash: str) -> bool:
        return any(
            e.status == IngestStatus.INGESTED
            and e.source_name == source_name
            and e.content_hash == content_hash
            for e in self._entries
        )

    def gate_decision(self, source_name: str, content_hash: str) -> str | None:
        for entry in reversed(self._entries):
            if (
                entry.source_name == source_name
                and entry.content_hash == content_hash
                and entry.gate is not None
            ):
                return entry.gate.get("decision")
        return None
