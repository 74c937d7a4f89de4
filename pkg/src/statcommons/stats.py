"""Statistical variables, observations, series/point queries, and CSV export.

Observations are retained per provenance; queries resolve conflicts through
the configured source-preference order, falling back to the latest import.
Values are exact decimals so the CSV exporter is a pure, byte-stable
function of store state.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from decimal import Decimal
from enum import Enum

from .errors import (
    DuplicateId,
    EmptyRequest,
    NonFiniteValue,
    UnknownEntity,
    UnknownProvenance,
    UnknownVariable,
)
from .kg import KnowledgeGraph, validate_node_id
from .values import DateLiteral, parse_date, render_decimal

LATEST = "LATEST"

EXPORT_HEADER = [
    "entity_id",
    "entity_name",
    "variable",
    "date",
    "value",
    "unit",
    "provenance",
]


@dataclass(frozen=True)
class StatisticalVariable:
    id: str
    name: str
    unit: str | None = None
    description: str | None = None


@dataclass(frozen=True)
class Provenance:
    id: str
    source_name: str
    url: str
    import_timestamp: str  # ISO-8601
    content_hash: str


@dataclass(frozen=True)
class Observation:
    entity: str
    variable: str
    date: DateLiteral
    value: Decimal
    unit: str | None = None
    provenance: str = ""

    def key(self) -> tuple[str, str, str, str]:
        return (self.entity, self.variable, str(self.date), self.provenance)


@dataclass(frozen=True)
class SeriesPoint:
    date: DateLiteral
    value: Decimal
    provenance: str


@dataclass(frozen=True)
class Series:
    entity: str
    variable: str
    points: tuple[SeriesPoint, ...]


class UpsertResult(Enum):
    INSERTED = "inserted"
    REPLACED = "replaced"


@dataclass
class StatStore:
    """Observation store bound to a knowledge graph for entity existence."""

    kg: KnowledgeGraph
    source_preference: list[str] = field(default_factory=list)
    _variables: dict[str, StatisticalVariable] = field(default_factory=dict)
    _provenances: dict[str, Provenance] = field(default_factory=dict)
    # (entity, variable) -> {(date str, provenance id) -> Observation}
    _observations: dict[tuple[str, str], dict[tuple[str, str], Observation]] = field(
        default_factory=dict
    )

    # -- registration ------------------------------------------------------

    def register_variable(self, variable: StatisticalVariable) -> None:
        validate_node_id(variable.id)
        if variable.id in self._variables:
            raise DuplicateId(f"variable {variable.id!r} already registered")
        self._variables[variable.id] = variable

    def has_variable(self, variable_id: str) -> bool:
        return variable_id in self._variables

    def variable(self, variable_id: str) -> StatisticalVariable:
        if variable_id not in self._variables:
            raise UnknownVariable(f"unknown variable {variable_id!r}")
        return self._variables[variable_id]

    def variables(self) -> list[StatisticalVariable]:
        return [self._variables[k] for k in sorted(self._variables)]

    def register_provenance(self, provenance: Provenance) -> None:
        # Re-registering the same id is a no-op (same source re-imported).
        self._provenances[provenance.id] = provenance

    def provenance(self, provenance_id: str) -> Provenance:
        if provenance_id not in self._provenances:
            raise UnknownProvenance(f"unknown provenance {provenance_id!r}")
        return self._provenances[provenance_id]

    def provenances(self) -> list[Provenance]:
        return [self._provenances[k] for k in sorted(self._provenances)]

    # -- writes -------------------------------------------------------------

    def put_observation(self, obs: Observation) -> UpsertResult:
        if not self.kg.has_node(obs.entity):
            raise UnknownEntity(f"unknown entity {obs.entity!r}")
        if obs.variable not in self._variables:
            raise UnknownVariable(f"unknown variable {obs.variable!r}")
        if obs.provenance not in self._provenances:
            raise UnknownProvenance(f"unknown provenance {obs.provenance!r}")
        if not isinstance(obs.value, Decimal) or not obs.value.is_finite():
            raise NonFiniteValue(f"value must be a finite decimal: {obs.value!r}")
        bucket = self._observations.setdefault((obs.entity, obs.variable), {})
        key = (str(obs.date), obs.provenance)
        result = UpsertResult.REPLACED if key in bucket else UpsertResult.INSERTED
        bucket[key] = obs
        return result

    # -- conflict resolution --------------------------------------------------

    def _preference_rank(self, provenance_id: str) -> int:
        source = self._provenances[provenance_id].source_name
        try:
            return self.source_preference.index(source)
        except ValueError:
            return len(self.source_preference)

    def _pick(self, candidates: list[Observation]) -> Observation:
        """Preferred source first, then latest import, then provenance id."""

        def rank(obs: Observation) -> tuple[int, "_ReverseStr", str]:
            prov = self._provenances[obs.provenance]
            return (
                self._preference_rank(obs.provenance),
                _ReverseStr(prov.import_timestamp),
                obs.provenance,
            )

        return min(candidates, key=rank)

    # -- reads ----------------------------------------------------------------

    def series(self, entity: str, variable: str) -> Series:
        if not self.kg.has_node(entity):
            raise UnknownEntity(f"unknown entity {entity!r}")
        if variable not in self._variables:
            raise UnknownVariable(f"unknown variable {variable!r}")
        bucket = self._observations.get((entity, variable), {})
        by_date: dict[str, list[Observation]] = {}
        for (date_str, _prov), obs in bucket.items():
            by_date.setdefault(date_str, []).append(obs)
        points = []
        for date_str in sorted(by_date, key=lambda d: parse_date(d).sort_key()):
            chosen = self._pick(by_date[date_str])
            points.append(
                SeriesPoint(date=chosen.date, value=chosen.value, provenance=chosen.provenance)
            )
        return Series(entity=entity, variable=variable, points=tuple(points))

    def point(
        self, entities: list[str], variable: str, date_spec: str
    ) -> list[Observation]:
        if not entities:
            raise EmptyRequest("entity list is empty")
        if variable not in self._variables:
            raise UnknownVariable(f"unknown variable {variable!r}")
        wanted = None if date_spec == LATEST else parse_date(date_spec)
        out: list[Observation] = []
        for entity in sorted(set(entities)):
            if not self.kg.has_node(entity):
                continue
            series = self.series(entity, variable)
            if not series.points:
                continue
            if wanted is None:
                pt = series.points[-1]
            else:
                matches = [p for p in series.points if p.date == wanted]
                if not matches:
                    continue
                pt = matches[0]
            obs = self._observations[(entity, variable)][(str(pt.date), pt.provenance)]
            out.append(obs)
        return out

    def list_variables(self, entity: str) -> list[str]:
        if not self.kg.has_node(entity):
            raise UnknownEntity(f"unknown entity {entity!r}")
        return sorted(
            variable
            for (ent, variable), bucket in self._observations.items()
            if ent == entity and bucket
        )

    def all_observations(self) -> list[Observation]:
        out: list[Observation] = []
        for key in sorted(self._observations):
            bucket = self._observations[key]
            for subkey in sorted(bucket):
                out.append(bucket[subkey])
        return out

    # -- export -----------------------------------------------------------------

    def export_csv(
        self,
        entities: list[str],
        variables: list[str],
        date_range: tuple[str, str] | None = None,
    ) -> bytes:
        if not entities or not variables:
            raise EmptyRequest("entities and variables must be nonempty")
        bounds = None
        if date_range is not None:
            low = parse_date(date_range[0]).sort_key()
            high_date = parse_date(date_range[1])
            # A year-precision upper bound includes every month of that year.
            high = (high_date.year, high_date.month or 12)
            bounds = (low, high)
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
        writer.writerow(EXPORT_HEADER)
        for entity in sorted(set(entities)):
            if not self.kg.has_node(entity):
                continue
            entity_name = self.kg.node_name(entity) or ""
            for variable_id in sorted(set(variables)):
                if variable_id not in self._variables:
                    continue
                variable = self._variables[variable_id]
                for pt in self.series(entity, variable_id).points:
                    if bounds is not None:
                        key = pt.date.sort_key()
                        if not (bounds[0] <= key <= bounds[1]):
                            continue
                    obs = self._observations[(entity, variable_id)][
                        (str(pt.date), pt.provenance)
                    ]
                    writer.writerow(
                        [
                            entity,
                            entity_name,
                            variable_id,
                            str(pt.date),
                            render_decimal(pt.value),
                            obs.unit or variable.unit or "",
                            pt.provenance,
                        ]
                    )
        return buf.getvalue().encode("utf-8")


class _ReverseStr(str):
    """Orders strings descending inside an ascending tuple comparison."""

    def __lt__(self, other: str) -> bool:  # type: ignore[override]
        return str.__gt__(self, other)

    def __gt__(self, other: str) -> bool:  # type: ignore[override]
        return str.__lt__(self, other)
