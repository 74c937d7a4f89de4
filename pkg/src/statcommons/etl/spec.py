"""Declarative source descriptions.

A source spec is one YAML document saying how to fetch a source, how to
parse the payload into a table, and how to map table columns into the
common observation schema.  Connectors are data, not code: a new source
is a new spec file.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import yaml

from ..errors import SpecError
from ..kg import PlaceLevel
from ..privacy.microdata import Role
from ..privacy.risk import RiskThresholds
from ..stats import StatisticalVariable

FETCH_KINDS = ("http-json", "http-csv", "local-file")
DIALECTS = ("csv", "json-records")
ENTITY_KINDS = ("place_code", "descriptor")
DATE_FORMATS = ("year", "month", "auto")


@dataclass(frozen=True)
class FetchSpec:
    kind: str  # http-json | http-csv | local-file
    location: str


@dataclass(frozen=True)
class TableFormat:
    dialect: str  # csv | json-records
    delimiter: str = ","
    records_path: str | None = None


@dataclass(frozen=True)
class FieldMapping:
    entity_kind: str  # place_code | descriptor
    entity_field: str
    entity_level: PlaceLevel | None = None
    ancestor_field: str | None = None
    variable_id: str | None = None
    variable_field: str | None = None
    date_field: str = "date"
    date_format: str = "auto"
    value_field: str = "value"
    unit: str | None = None

    def referenced_columns(self) -> list[str]:
        columns = [self.entity_field, self.date_field, self.value_field]
        if self.variable_field:
            columns.append(self.variable_field)
        if self.ancestor_field:
            columns.append(self.ancestor_field)
        return columns


@dataclass(frozen=True)
class PrivacySettings:
    roles: dict[str, Role] = field(default_factory=dict)
    thresholds: RiskThresholds = field(default_factory=RiskThresholds)
    lexicon_path: str | None = None


@dataclass(frozen=True)
class SourceSpec:
    source_name: str
    fetch: FetchSpec
    format: TableFormat
    mapping: FieldMapping
    kind_of_data: str = "aggregate"  # aggregate | microdata
    variables: tuple[StatisticalVariable, ...] = ()
    privacy: PrivacySettings = field(default_factory=PrivacySettings)
    base_dir: Path | None = None  # directory of the spec file, for relative paths


def _require(mapping: dict, key: str, context: str):
    if key not in mapping:
        raise SpecError(f"missing {key!r} in {context}")
    return mapping[key]


def _one_of(value: str, allowed: tuple[str, ...], context: str) -> str:
    if value not in allowed:
        raise SpecError(f"{context} must be one of {allowed}, got {value!r}")
    return value


def parse_source_spec(doc: dict, base_dir: Path | None = None) -> SourceSpec:
    if not isinstance(doc, dict):
        raise SpecError("source spec must be a mapping")
    source_name = _require(doc, "source_name", "source spec")
    kind_of_data = _one_of(
        doc.get("kind_of_data", "aggregate"), ("aggregate", "microdata"), "kind_of_data"
    )

    fetch_doc = _require(doc, "fetch", "source spec")
    fetch = FetchSpec(
        kind=_one_of(_require(fetch_doc, "kind", "fetch"), FETCH_KINDS, "fetch.kind"),
        location=_require(fetch_doc, "location", "fetch"),
    )

    format_doc = _require(doc, "format", "source spec")
    table_format = TableFormat(
        dialect=_one_of(
            _require(format_doc, "dialect", "format"), DIALECTS, "format.dialect"
        ),
        delimiter=format_doc.get("delimiter", ","),
        records_path=format_doc.get("records_path"),
    )

    mapping_doc = _require(doc, "mapping", "source spec")
    entity_doc = _require(mapping_doc, "entity", "mapping")
    entity_kind = _one_of(
        _require(entity_doc, "kind", "mapping.entity"), ENTITY_KINDS, "entity.kind"
    )
    level = None
    if "level" in entity_doc:
        level = PlaceLevel.parse(entity_doc["level"])
    if entity_kind == "place_code" and level is None:
        raise SpecError("mapping.entity.level is required for place_code entities")

    variable_value = _require(mapping_doc, "variable", "mapping")
    variable_id = variable_field = None
    if isinstance(variable_value, dict):
        variable_field = _require(variable_value, "field", "mapping.variable")
    else:
        variable_id = str(variable_value)

    date_doc = _require(mapping_doc, "date", "mapping")
    value_doc = _require(mapping_doc, "value", "mapping")
    field_mapping = FieldMapping(
        entity_kind=entity_kind,
        entity_field=_require(entity_doc, "field", "mapping.entity"),
        entity_level=level,
        ancestor_field=entity_doc.get("ancestor_field"),
        variable_id=variable_id,
        variable_field=variable_field,
        date_field=_require(date_doc, "field", "mapping.date"),
        date_format=_one_of(
            date_doc.get("format", "auto"), DATE_FORMATS, "mapping.date.format"
        ),
        value_field=_require(value_doc, "field", "mapping.value"),
        unit=mapping_doc.get("unit"),
    )

    variables = tuple(
        StatisticalVariable(
            id=_require(v, "id", "variables[]"),
            name=_require(v, "name", "variables[]"),
            unit=v.get("unit"),
            description=v.get("description"),
        )
        for v in doc.get("variables", [])
    )

    privacy_doc = doc.get("privacy", {}) or {}
    roles = {
        name: Role.parse(role) for name, role in (privacy_doc.get("roles") or {}).items()
    }
    thresholds_doc = privacy_doc.get("thresholds") or {}
    thresholds = RiskThresholds(
        k=thresholds_doc.get("k", 1),
        l=thresholds_doc.get("l", 1),
        t=thresholds_doc.get("t", 1.0),
        attack_prob=thresholds_doc.get("attack_prob", 0.90),
        pop_fraction=thresholds_doc.get("pop_fraction", 0.30),
    )
    privacy = PrivacySettings(
        roles=roles, thresholds=thresholds, lexicon_path=privacy_doc.get("lexicon")
    )

    return SourceSpec(
        source_name=source_name,
        fetch=fetch,
        format=table_format,
        mapping=field_mapping,
        kind_of_data=kind_of_data,
        variables=variables,
        privacy=privacy,
        base_dir=base_dir,
    )


def load_source_spec(path: str | Path) -> SourceSpec:
    path = Path(path)
    try:
        doc = yaml.safe_load(path.read_text(encoding="utf-8"))
    except yaml.YAMLError as exc:
        raise SpecError(f"cannot parse {path}: {exc}") from exc
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from exc
    return parse_source_spec(doc, base_dir=path.parent)
