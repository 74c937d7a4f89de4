"""Row-by-row normalization into the common observation schema.

Every input row becomes exactly one observation or one rejected row with a
reason; nothing is dropped silently.  Entity references are resolved against
the place registry: official codes (with a 6-to-7-digit unique-prefix rule
for municipalities) or descriptors (name + level + ancestor).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import AmbiguousCode, InvalidDate, MappingError, NonFiniteValue, UnknownCode
from ..kg import EntityDescriptor, KnowledgeGraph, PlaceLevel, ResolutionStatus
from ..stats import Observation
from ..values import parse_date, parse_decimal
from .spec import FieldMapping
from .tables import GenericTable


@dataclass(frozen=True)
class RejectedRow:
    row_index: int
    reason: str  # entity | variable | date | value
    detail: str


class PlaceCodeIndex:
    """Code lookup over the registry: 7-digit municipalities, 2-letter states, BR."""

    def __init__(self, kg: KnowledgeGraph) -> None:
        self._by_level: dict[PlaceLevel, dict[str, str]] = {
            level: {} for level in PlaceLevel
        }
        for level in PlaceLevel:
            for node_id in kg.nodes_of_type(level.value):
                code = kg.property_text(node_id, "code")
                if code:
                    self._by_level[level][code] = node_id

    def resolve(self, code: str, level: PlaceLevel) -> str:
        code = code.strip()
        table = self._by_level[level]
        if level == PlaceLevel.MUNICIPALITY:
            if not code.isdigit():
                raise UnknownCode(f"municipality code must be digits, got {code!r}")
            if len(code) == 7:
                if code in table:
                    return table[code]
                raise UnknownCode(f"unknown municipality code {code!r}")
            if len(code) == 6:
                matches = sorted(
                    node_id
                    for full, node_id in table.items()
                    if full.startswith(code)
                )
                if len(matches) == 1:
                    return matches[0]
                if not matches:
                    raise UnknownCode(f"no municipality code with prefix {code!r}")
                raise AmbiguousCode(
                    f"prefix {code!r} matches {len(matches)} municipality codes"
                )
            raise UnknownCode(f"municipality code must have 6 or 7 digits, got {code!r}")
        if level == PlaceLevel.STATE:
            key = code.upper()
            if key in table:
                return table[key]
            raise UnknownCode(f"unknown state code {code!r}")
        key = code.upper()
        if key in table:
            return table[key]
        raise UnknownCode(f"unknown country code {code!r}")


def resolve_place_code(code: str, level: PlaceLevel, kg: KnowledgeGraph) -> str:
    return PlaceCodeIndex(kg).resolve(code, level)


def _parse_row_date(text: str, date_format: str):
    text = text.strip()
    date = parse_date(text)
    if date_format == "year" and date.month is not None:
        raise InvalidDate(f"expected YYYY, got {text!r}")
    if date_format == "month" and date.month is None:
        raise InvalidDate(f"expected YYYY-MM, got {text!r}")
    return date


def normalize(
    table: GenericTable,
    mapping: FieldMapping,
    kg: KnowledgeGraph,
    provenance_id: str,
    known_variables: set[str] | None = None,
) -> tuple[list[Observation], list[RejectedRow]]:
    """Map every table row to an observation or a rejected row.

    Conservation is guaranteed: len(observations) + len(rejects) equals
    the number of input rows.
    """
    missing = [c for c in mapping.referenced_columns() if c not in table.columns]
    if missing:
        raise MappingError(f"mapped columns missing from table: {missing}")
    if mapping.variable_id is not None and known_variables is not None:
        if mapping.variable_id not in known_variables:
            raise MappingError(f"variable {mapping.variable_id!r} is not declared")

    col = {name: i for i, name in enumerate(table.columns)}
    entity_idx = col[mapping.entity_field]
    date_idx = col[mapping.date_field]
    value_idx = col[mapping.value_field]
    variable_idx = col[mapping.variable_field] if mapping.variable_field else None
    ancestor_idx = col[mapping.ancestor_field] if mapping.ancestor_field else None

    code_index = PlaceCodeIndex(kg) if mapping.entity_kind == "place_code" else None

    observations: list[Observation] = []
    rejects: list[RejectedRow] = []
    for i, row in enumerate(table.rows):
        # entity
        try:
            if code_index is not None:
                entity = code_index.resolve(row[entity_idx], mapping.entity_level)
            else:
                descriptor = EntityDescriptor(
                    name=row[entity_idx].strip() or None,
                    level=mapping.entity_level,
                    ancestor_name=(
                        row[ancestor_idx].strip() or None
                        if ancestor_idx is not None
                        else None
                    ),
                )
                resolution = kg.resolve(descriptor)
                if resolution.status != ResolutionStatus.UNIQUE:
                    raise UnknownCode(
                        f"descriptor resolution was {resolution.status.value}"
                    )
                entity = resolution.node_id
        except (UnknownCode, AmbiguousCode) as exc:
            rejects.append(RejectedRow(i, "entity", str(exc)))
            continue

        # variable
        variable = mapping.variable_id
        if variable_idx is not None:
            variable = row[variable_idx].strip()
            if known_variables is not None and variable not in known_variables:
                rejects.append(
                    RejectedRow(i, "variable", f"unknown variable {variable!r}")
                )
                continue

        # date
        try:
            date = _parse_row_date(row[date_idx], mapping.date_format)
        except InvalidDate as exc:
            rejects.append(RejectedRow(i, "date", str(exc)))
            continue

        # value
        try:
            value = parse_decimal(row[value_idx])
        except NonFiniteValue as exc:
            rejects.append(RejectedRow(i, "value", str(exc)))
            continue

        observations.append(
            Observation(
                entity=entity,
                variable=variable,
                date=date,
                value=value,
                unit=mapping.unit,
                provenance=provenance_id,
            )
        )
    assert len(observations) + len(rejects) == table.n_rows
    return observations, rejects
