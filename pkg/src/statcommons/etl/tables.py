"""Parsing raw payloads into rectangular text tables.

Rows that do not fit the table shape (wrong arity, divergent JSON keys)
are collected as rejects instead of aborting the parse; only a payload
that cannot be read at all is fatal.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

from ..errors import ParseError
from .spec import TableFormat


@dataclass(frozen=True)
class TableReject:
    row_index: int
    reason: str
    detail: str


@dataclass(frozen=True)
class GenericTable:
    columns: tuple[str, ...]
    rows: tuple[tuple[str, ...], ...]
    rejects: tuple[TableReject, ...] = field(default_factory=tuple)

    @property
    def n_rows(self) -> int:
        return len(self.rows)


def parse(payload: bytes, fmt: TableFormat) -> GenericTable:
    if fmt.dialect == "csv":
        return _parse_csv(payload, fmt)
    if fmt.dialect == "json-records":
        return _parse_json_records(payload, fmt)
    raise ParseError(f"unknown dialect {fmt.dialect!r}")


def _decode(payload: bytes) -> str:
    try:
        return payload.decode("utf-8-sig")
    except UnicodeDecodeError as exc:
        raise ParseError(f"payload is not UTF-8: {exc}") from exc


def _parse_csv(payload: bytes, fmt: TableFormat) -> GenericTable:
    text = _decode(payload)
    reader = csv.reader(io.StringIO(text), delimiter=fmt.delimiter)
    try:
        all_rows = list(reader)
    except csv.Error as exc:
        raise ParseError(f"CSV error near line {reader.line_num}: {exc}") from exc
    if not all_rows:
        raise ParseError("empty CSV payload")
    columns = tuple(all_rows[0])
    rows: list[tuple[str, ...]] = []
    rejects: list[TableReject] = []
    for i, row in enumerate(all_rows[1:]):
        if not row:
            continue  # blank line
        if len(row) != len(columns):
            rejects.append(
                TableReject(
                    row_index=i,
                    reason="arity",
                    detail=f"{len(row)} cells, expected {len(columns)}",
                )
            )
            continue
        rows.append(tuple(row))
    return GenericTable(columns=columns, rows=tuple(rows), rejects=tuple(rejects))


def _render_json_cell(value: object) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_json_records(payload: bytes, fmt: TableFormat) -> GenericTable:
    text = _decode(payload)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(
            f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    if fmt.records_path is not None:
        if not isinstance(doc, dict) or fmt.records_path not in doc:
            raise ParseError(f"records path {fmt.records_path!r} not found")
        doc = doc[fmt.records_path]
    if not isinstance(doc, list):
        raise ParseError("expected an array of records")
    if not doc:
        return GenericTable(columns=(), rows=())
    first = doc[0]
    if not isinstance(first, dict):
        raise ParseError("records must be objects")
    columns = tuple(first.keys())
    column_set = set(columns)
    rows: list[tuple[str, ...]] = []
    rejects: list[TableReject] = []
    for i, record in enumerate(doc):
        if not isinstance(record, dict) or set(record.keys()) != column_set:
            rejects.append(
                TableReject(
                    row_index=i,
                    reason="keys",
                    detail="record keys differ from first record",
                )
            )
            continue
        rows.append(tuple(_render_json_cell(record[c]) for c in columns))
    return GenericTable(columns=columns, rows=tuple(rows), rejects=tuple(rejects))
