"""Exception hierarchy shared by all subsystems.

Every error carries a short machine-readable ``code`` used by the CLI and
the HTTP error envelope.
"""

from __future__ import annotations


class CommonsError(Exception):
    """Base class for domain errors."""

    code = "error"


class DuplicateId(CommonsError):
    code = "duplicate_id"


class InvalidId(CommonsError):
    code = "invalid_id"


class UnknownNode(CommonsError):
    code = "unknown_node"


class UnknownSubject(CommonsError):
    code = "unknown_subject"


class UnknownObject(CommonsError):
    code = "unknown_object"


class EmptyDescriptor(CommonsError):
    code = "empty_descriptor"


class CycleDetected(CommonsError):
    code = "cycle_detected"


class MultipleParents(CommonsError):
    code = "multiple_parents"


class InvalidLevel(CommonsError):
    code = "invalid_level"


class UnknownEntity(CommonsError):
    code = "unknown_entity"


class UnknownVariable(CommonsError):
    code = "unknown_variable"


class UnknownProvenance(CommonsError):
    code = "unknown_provenance"


class NonFiniteValue(CommonsError):
    code = "non_finite_value"


class InvalidDate(CommonsError):
    code = "invalid_date"


class EmptyRequest(CommonsError):
    code = "empty_request"


class FetchFailed(CommonsError):
    code = "fetch_failed"


class ParseError(CommonsError):
    code = "parse_error"


class MappingError(CommonsError):
    code = "mapping_error"


class SpecError(CommonsError):
    code = "spec_error"


class UnknownCode(CommonsError):
    code = "unknown_code"


class AmbiguousCode(CommonsError):
    code = "ambiguous_code"


class UnknownAttribute(CommonsError):
    code = "unknown_attribute"


class EmptyTable(CommonsError):
    code = "empty_table"


class NotSensitive(CommonsError):
    code = "not_sensitive"


class UnmappedValue(CommonsError):
    code = "unmapped_value"


class InvalidEpsilon(CommonsError):
    code = "invalid_epsilon"
