"""Literal values: dates at year/month precision and exact decimal numbers.

Observation values are carried as ``decimal.Decimal`` end to end so that a
normalize -> ingest -> export round trip reproduces the source text without
binary-float drift.  ``render_decimal`` defines the one canonical rendering
(no exponent, no trailing zeros, ``.`` separator) used by the CSV exporter
and the persistence layer.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation

from .errors import InvalidDate, NonFiniteValue

_YEAR_RE = re.compile(r"^\d{4}$")
_MONTH_RE = re.compile(r"^(\d{4})-(\d{2})$")


@dataclass(frozen=True, order=True)
class DateLiteral:
    """A date at year (``YYYY``) or month (``YYYY-MM``) precision.

    Ordering: a year-precision date sorts before any month of the same year.
    """

    year: int
    month: int | None = None

    def __str__(self) -> str:
        if self.month is None:
            return f"{self.year:04d}"
        return f"{self.year:04d}-{self.month:02d}"

    def sort_key(self) -> tuple[int, int]:
        return (self.year, self.month or 0)


def parse_date(text: str) -> DateLiteral:
    """Parse ``YYYY`` or ``YYYY-MM``; anything else raises InvalidDate."""
    if _YEAR_RE.match(text):
        return DateLiteral(year=int(text))
    m = _MONTH_RE.match(text)
    if m:
        year, month = int(m.group(1)), int(m.group(2))
        if not 1 <= month <= 12:
            raise InvalidDate(f"month out of range: {text!r}")
        return DateLiteral(year=year, month=month)
    raise InvalidDate(f"expected YYYY or YYYY-MM, got {text!r}")


def parse_decimal(text: str) -> Decimal:
    """Parse a finite decimal number; NaN/Inf and garbage raise NonFiniteValue."""
    try:
        value = Decimal(text.strip())
    except (InvalidOperation, ValueError, AttributeError):
        raise NonFiniteValue(f"not a decimal number: {text!r}") from None
    if not value.is_finite():
        raise NonFiniteValue(f"not finite: {text!r}")
    return value


def render_decimal(value: Decimal) -> str:
    """Canonical plain rendering: no exponent, no trailing fraction zeros."""
    text = format(value, "f")
    if "." in text:
        text = text.rstrip("0").rstrip(".")
    if text in ("-0", ""):
        text = "0"
    return text


@dataclass(frozen=True)
class LiteralValue:
    """Typed literal object of a triple: text, number, or date."""

    kind: str  # "text" | "number" | "date"
    payload: str | Decimal | DateLiteral

    def __post_init__(self) -> None:
        if self.kind not in ("text", "number", "date"):
            raise ValueError(f"unknown literal kind {self.kind!r}")

    @classmethod
    def text(cls, value: str) -> "LiteralValue":
        return cls("text", value)

    @classmethod
    def number(cls, value: Decimal | str) -> "LiteralValue":
        if isinstance(value, str):
            value = parse_decimal(value)
        if not value.is_finite():
            raise NonFiniteValue(f"not finite: {value}")
        return cls("number", value)

    @classmethod
    def date(cls, value: DateLiteral | str) -> "LiteralValue":
        if isinstance(value, str):
            value = parse_date(value)
        return cls("date", value)

    def render(self) -> str:
        if self.kind == "number":
            return render_decimal(self.payload)  # type: ignore[arg-type]
        return str(self.payload)
