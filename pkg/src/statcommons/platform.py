"""Store facade: knowledge graph + observations + ledger under one root.

On-disk layout:

    <root>/nodes/nodes.jsonl
    <root>/triples/triples.jsonl
    <root>/observations/variables.jsonl
    <root>/observations/provenances.jsonl
    <root>/observations/observations.jsonl
    <root>/ledger

Persistence is deterministic (sorted JSON lines) so identical store state
always serializes to identical bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .etl.ledger import IngestLedger
from .kg import KnowledgeGraph, Triple
from .locks import ReadWriteLock
from .stats import Observation, Provenance, StatisticalVariable, StatStore
from .values import LiteralValue, parse_date, parse_decimal, render_decimal


def _literal_to_doc(value: LiteralValue) -> dict:
    return {"kind": value.kind, "value": value.render()}


def _literal_from_doc(doc: dict) -> LiteralValue:
    kind = doc["kind"]
    if kind == "text":
        return LiteralValue.text(doc["value"])
    if kind == "number":
        return LiteralValue.number(parse_decimal(doc["value"]))
    return LiteralValue.date(parse_date(doc["value"]))


@dataclass
class Platform:
    kg: KnowledgeGraph
    stats: StatStore
    ledger: IngestLedger
    lock: ReadWriteLock
    root: Path | None = None

    @classmethod
    def in_memory(cls, source_preference: list[str] | None = None) -> "Platform":
        kg = KnowledgeGraph()
        return cls(
            kg=kg,
            stats=StatStore(kg=kg, source_preference=source_preference or []),
            ledger=IngestLedger.open(None),
            lock=ReadWriteLock(),
        )

    @classmethod
    def open(
        cls, root: str | Path, source_preference: list[str] | None = None
    ) -> "Platform":
        root = Path(root)
        platform = cls.in_memory(source_preference)
        platform.root = root
        platform.ledger = IngestLedger.open(root / "ledger")
        nodes_file = root / "nodes" / "nodes.jsonl"
        if nodes_file.exists():
            for line in _lines(nodes_file):
                doc = json.loads(line)
                platform.kg.restore_node(doc["id"])
        triples_file = root / "triples" / "triples.jsonl"
        if triples_file.exists():
            for line in _lines(triples_file):
                doc = json.loads(line)
                obj = (
                    doc["object"]["value"]
                    if doc["object"]["kind"] == "node"
                    else _literal_from_doc(doc["object"])
                )
                platform.kg.insert_triple(
                    Triple(subject=doc["subject"], predicate=doc["predicate"], object=obj)
                )
        obs_dir = root / "observations"
        variables_file = obs_dir / "variables.jsonl"
        if variables_file.exists():
            for line in _lines(variables_file):
                doc = json.loads(line)
                platform.stats.register_variable(
                    StatisticalVariable(
                        id=doc["id"],
                        name=doc["name"],
                        unit=doc.get("unit"),
                        description=doc.get("description"),
                    )
                )
        provenances_file = obs_dir / "provenances.jsonl"
        if provenances_file.exists():
            for line in _lines(provenances_file):
                doc = json.loads(line)
                platform.stats.register_provenance(
                    Provenance(
                        id=doc["id"],
                        source_name=doc["source_name"],
                        url=doc["url"],
                        import_timestamp=doc["import_timestamp"],
                        content_hash=doc["content_hash"],
                    )
                )
        observations_file = obs_dir / "observations.jsonl"
        if observations_file.exists():
            for line in _lines(observations_file):
                doc = json.loads(line)
                platform.stats.put_observation(
                    Observation(
                        entity=doc["entity"],
                        variable=doc["variable"],
                        date=parse_date(doc["date"]),
                        value=parse_decimal(doc["value"]),
                        unit=doc.get("unit"),
                        provenance=doc["provenance"],
                    )
                )
        return platform

    def save(self, root: str | Path | None = None) -> Path:
        root = Path(root) if root is not None else self.root
        if root is None:
            raise ValueError("no store root given")
        self.root = root
        (root / "nodes").mkdir(parents=True, exist_ok=True)
        (root / "triples").mkdir(parents=True, exist_ok=True)
        (root / "observations").mkdir(parents=True, exist_ok=True)

        with (root / "nodes" / "nodes.jsonl").open("w", encoding="utf-8") as handle:
            for node_id in self.kg.node_ids():
                handle.write(json.dumps({"id": node_id}) + "\n")

        with (root / "triples" / "triples.jsonl").open("w", encoding="utf-8") as handle:
            for triple in self.kg.all_triples():
                obj = (
                    {"kind": "node", "value": triple.object}
                    if isinstance(triple.object, str)
                    else _literal_to_doc(triple.object)
                )
                handle.write(
                    json.dumps(
                        {
                            "subject": triple.subject,
                            "predicate": triple.predicate,
                            "object": obj,
                        },
                        ensure_ascii=False,
                    )
                    + "\n"
                )

        obs_dir = root / "observations"
        with (obs_dir / "variables.jsonl").open("w", encoding="utf-8") as handle:
            for variable in self.stats.variables():
                doc = {"id": variable.id, "name": variable.name}
                if variable.unit is not None:
                    doc["unit"] = variable.unit
                if variable.description is not None:
                    doc["description"] = variable.description
                handle.write(json.dumps(doc, ensure_ascii=False) + "\n")

        with (obs_dir / "provenances.jsonl").open("w", encoding="utf-8") as handle:
            for prov in self.stats.provenances():
                handle.write(
                    json.dumps(
                        {
                            "id": prov.id,
                            "source_name": prov.source_name,
                            "url": prov.url,
                            "import_timestamp": prov.import_timestamp,
                            "content_hash": prov.content_hash,
                        },
                        ensure_ascii=False,
                    )
                    + "\n"
                )

        with (obs_dir / "observations.jsonl").open("w", encoding="utf-8") as handle:
            for obs in self.stats.all_observations():
                doc = {
                    "entity": obs.entity,
                    "variable": obs.variable,
                    "date": str(obs.date),
                    "value": render_decimal(obs.value),
                    "provenance": obs.provenance,
                }
                if obs.unit is not None:
                    doc["unit"] = obs.unit
                handle.write(json.dumps(doc, ensure_ascii=False) + "\n")

        # The ledger file is append-only in place; only a relocation to a
        # different root rewrites it (from the in-memory entries).
        ledger_path = root / "ledger"
        if self.ledger.path != ledger_path:
            with ledger_path.open("w", encoding="utf-8") as handle:
                for entry in self.ledger.entries():
                    handle.write(entry.to_json() + "\n")
            self.ledger.path = ledger_path
        ledger_path.touch()
        return root

    def read_lock(self):
        return self.lock.read()

    def write_batch(self):
        return self.lock.write()


def _lines(path: Path) -> list[str]:
    return [
        line for line in path.read_text(encoding="utf-8").splitlines() if line.strip()
    ]
