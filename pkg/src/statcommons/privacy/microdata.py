"""Individual-level tables with attribute roles."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from enum import Enum

from ..errors import UnknownAttribute


class Role(Enum):
    IDENTIFIER = "identifier"
    QUASI_IDENTIFIER = "quasi_identifier"
    SENSITIVE = "sensitive"
    OTHER = "other"

    @classmethod
    def parse(cls, text: str) -> "Role":
        normalized = text.strip().lower().replace("-", "_")
        for role in cls:
            if role.value == normalized:
                return role
        raise ValueError(f"unknown attribute role {text!r}")


@dataclass(frozen=True)
class Attribute:
    name: str
    role: Role


@dataclass(frozen=True)
class MicrodataTable:
    """Rows of text cells; every row has one cell per attribute."""

    attributes: tuple[Attribute, ...]
    rows: tuple[tuple[str, ...], ...]

    def __post_init__(self) -> None:
        arity = len(self.attributes)
        names = [a.name for a in self.attributes]
        if len(set(names)) != arity:
            raise ValueError("duplicate attribute names")
        for i, row in enumerate(self.rows):
            if len(row) != arity:
                raise ValueError(
                    f"row {i} has {len(row)} cells, expected {arity}"
                )

    @property
    def n_rows(self) -> int:
        return len(self.rows)

    def attribute_names(self) -> list[str]:
        return [a.name for a in self.attributes]

    def column_index(self, name: str) -> int:
        for i, attr in enumerate(self.attributes):
            if attr.name == name:
                return i
        raise UnknownAttribute(f"unknown attribute {name!r}")

    def role_of(self, name: str) -> Role:
        return self.attributes[self.column_index(name)].role

    def column(self, name: str) -> list[str]:
        idx = self.column_index(name)
        return [row[idx] for row in self.rows]

    def names_with_role(self, role: Role) -> list[str]:
        return [a.name for a in self.attributes if a.role == role]

    def quasi_identifiers(self) -> list[str]:
        return self.names_with_role(Role.QUASI_IDENTIFIER)

    def sensitive_attributes(self) -> list[str]:
        return self.names_with_role(Role.SENSITIVE)

    def with_rows(self, rows: list[tuple[str, ...]]) -> "MicrodataTable":
        return MicrodataTable(attributes=self.attributes, rows=tuple(rows))


def microdata_from_csv(
    content: str | bytes, roles: dict[str, Role]
) -> MicrodataTable:
    """Build a table from CSV text; ``roles`` assigns a role per column name."""
    if isinstance(content, bytes):
        content = content.decode("utf-8")
    reader = csv.reader(io.StringIO(content))
    rows = list(reader)
    if not rows:
        raise ValueError("empty CSV")
    header = rows[0]
    missing = [name for name in header if name not in roles]
    if missing:
        raise UnknownAttribute(f"no role assigned for columns: {missing}")
    attributes = tuple(Attribute(name, roles[name]) for name in header)
    return MicrodataTable(
        attributes=attributes, rows=tuple(tuple(row) for row in rows[1:])
    )
