"""Knowledge graph: nodes, triples, place hierarchy, and resolution by description.

Entities are referenced by what they are (name, place level, containing
place, official code), not by opaque identifiers; node ids are internal
handles of the form ``<kind>/<code-or-slug>``.
"""

from __future__ import annotations

import csv
import io
import re
import unicodedata
from dataclasses import dataclass, field
from enum import Enum

from .errors import (
    CycleDetected,
    DuplicateId,
    EmptyDescriptor,
    InvalidId,
    InvalidLevel,
    MultipleParents,
    UnknownNode,
    UnknownObject,
    UnknownSubject,
)
from .values import LiteralValue

_NODE_ID_RE = re.compile(r"^[a-z0-9/_-]{1,128}$")

TYPE_OF = "typeOf"
NAME = "name"
CODE = "code"
CONTAINED_IN = "containedInPlace"


class PlaceLevel(Enum):
    COUNTRY = "Country"
    STATE = "State"
    MUNICIPALITY = "Municipality"

    @property
    def depth(self) -> int:
        return _LEVEL_DEPTH[self]

    @classmethod
    def parse(cls, text: str) -> "PlaceLevel":
        for level in cls:
            if level.value.lower() == text.strip().lower():
                return level
        raise InvalidLevel(f"unknown place level {text!r}")


_LEVEL_DEPTH = {
    PlaceLevel.COUNTRY: 0,
    PlaceLevel.STATE: 1,
    PlaceLevel.MUNICIPALITY: 2,
}


def validate_node_id(node_id: str) -> str:
    if not _NODE_ID_RE.match(node_id):
        raise InvalidId(
            f"node id must be 1-128 chars of [a-z0-9/_-], got {node_id!r}"
        )
    return node_id


@dataclass(frozen=True)
class Triple:
    """One edge: subject node, predicate, and a node reference or literal object."""

    subject: str
    predicate: str
    object: str | LiteralValue  # str = node id reference

    def object_key(self) -> tuple[int, str]:
        # Node references sort before literals of equal text.
        if isinstance(self.object, str):
            return (0, self.object)
        return (1, self.object.render())

    def sort_key(self) -> tuple[str, int, str]:
        return (self.predicate, *self.object_key())

    def dedup_key(self) -> tuple[str, str, int, str]:
        return (self.subject, self.predicate, *self.object_key())


@dataclass(frozen=True)
class EntityDescriptor:
    """Description of an entity: any subset of name, level, ancestor name, code."""

    name: str | None = None
    level: PlaceLevel | None = None
    ancestor_name: str | None = None
    code: str | None = None

    def is_empty(self) -> bool:
        return (
            self.name is None
            and self.level is None
            and self.ancestor_name is None
            and self.code is None
        )


class ResolutionStatus(Enum):
    UNIQUE = "unique"
    AMBIGUOUS = "ambiguous"
    NOT_FOUND = "not_found"


@dataclass(frozen=True)
class Resolution:
    status: ResolutionStatus
    node_id: str | None = None
    candidates: tuple[str, ...] = ()

    @classmethod
    def unique(cls, node_id: str) -> "Resolution":
        return cls(ResolutionStatus.UNIQUE, node_id=node_id, candidates=(node_id,))

    @classmethod
    def ambiguous(cls, candidates: list[str]) -> "Resolution":
        return cls(ResolutionStatus.AMBIGUOUS, candidates=tuple(candidates))

    @classmethod
    def not_found(cls) -> "Resolution":
        return cls(ResolutionStatus.NOT_FOUND)


def _fold_name(name: str) -> str:
    # Case-insensitive, accent-sensitive: only casefold, keep diacritics.
    return unicodedata.normalize("NFC", name).casefold()


@dataclass
class KnowledgeGraph:
    """In-memory triple store with outbound and inbound indexes."""

    _nodes: set[str] = field(default_factory=set)
    _out: dict[str, list[Triple]] = field(default_factory=dict)
    _in: dict[str, list[Triple]] = field(default_factory=dict)
    _seen: set[tuple] = field(default_factory=set)
    # name (folded) -> node ids; code -> node ids
    _by_name: dict[str, set[str]] = field(default_factory=dict)
    _by_code: dict[str, set[str]] = field(default_factory=dict)

    # -- nodes ----------------------------------------------------------

    def has_node(self, node_id: str) -> bool:
        return node_id in self._nodes

    def node_ids(self) -> list[str]:
        return sorted(self._nodes)

    def insert_node(self, node_id: str, type_of: str, name: str) -> str:
        self.restore_node(node_id)
        self.insert_triple(Triple(node_id, TYPE_OF, LiteralValue.text(type_of)))
        self.insert_triple(Triple(node_id, NAME, LiteralValue.text(name)))
        return node_id

    def restore_node(self, node_id: str) -> str:
        """Register a node id without property triples (persistence reload)."""
        validate_node_id(node_id)
        if node_id in self._nodes:
            raise DuplicateId(f"node {node_id!r} already exists")
        self._nodes.add(node_id)
        self._out[node_id] = []
        self._in.setdefault(node_id, [])
        return node_id

    # -- triples --------------------------------------------------------

    def insert_triple(self, triple: Triple) -> None:
        if triple.subject not in self._nodes:
            raise UnknownSubject(f"unknown subject {triple.subject!r}")
        if isinstance(triple.object, str) and triple.object not in self._nodes:
            raise UnknownObject(f"unknown object {triple.object!r}")
        key = triple.dedup_key()
        if key in self._seen:
            return
        if triple.predicate == CONTAINED_IN:
            existing = [
                t for t in self._out[triple.subject] if t.predicate == CONTAINED_IN
            ]
            if existing:
                raise MultipleParents(
                    f"{triple.subject!r} already contained in {existing[0].object!r}"
                )
        self._seen.add(key)
        self._out[triple.subject].append(triple)
        if isinstance(triple.object, str):
            self._in[triple.object].append(triple)
        elif triple.predicate == NAME:
            self._by_name.setdefault(_fold_name(triple.object.payload), set()).add(
                triple.subject
            )
        elif triple.predicate == CODE:
            self._by_code.setdefault(str(triple.object.payload), set()).add(
                triple.subject
            )

    def triple_count(self) -> int:
        return len(self._seen)

    def triples_out(self, node_id: str, predicate: str | None = None) -> list[Triple]:
        if node_id not in self._nodes:
            raise UnknownNode(f"unknown node {node_id!r}")
        triples = self._out.get(node_id, [])
        if predicate is not None:
            triples = [t for t in triples if t.predicate == predicate]
        return sorted(triples, key=Triple.sort_key)

    def triples_in(self, node_id: str, predicate: str | None = None) -> list[Triple]:
        if node_id not in self._nodes:
            raise UnknownNode(f"unknown node {node_id!r}")
        triples = self._in.get(node_id, [])
        if predicate is not None:
            triples = [t for t in triples if t.predicate == predicate]
        return sorted(triples, key=lambda t: (t.predicate, t.subject))

    def all_triples(self) -> list[Triple]:
        out: list[Triple] = []
        for node_id in sorted(self._out):
            out.extend(sorted(self._out[node_id], key=Triple.sort_key))
        return out

    # -- node properties --------------------------------------------------

    def property_text(self, node_id: str, predicate: str) -> str | None:
        for t in self.triples_out(node_id, predicate):
            if isinstance(t.object, LiteralValue):
                return str(t.object.payload)
        return None

    def node_name(self, node_id: str) -> str | None:
        return self.property_text(node_id, NAME)

    def node_type(self, node_id: str) -> str | None:
        return self.property_text(node_id, TYPE_OF)

    def place_level(self, node_id: str) -> PlaceLevel | None:
        type_of = self.node_type(node_id)
        for level in PlaceLevel:
            if level.value == type_of:
                return level
        return None

    def nodes_of_type(self, type_of: str) -> list[str]:
        return sorted(
            node_id for node_id in self._nodes if self.node_type(node_id) == type_of
        )

    # -- place hierarchy --------------------------------------------------

    def parent(self, node_id: str) -> str | None:
        for t in self.triples_out(node_id, CONTAINED_IN):
            if isinstance(t.object, str):
                return t.object
        return None

    def ancestors(self, node_id: str) -> list[str]:
        if node_id not in self._nodes:
            raise UnknownNode(f"unknown node {node_id!r}")
        if self.place_level(node_id) is None:
            raise InvalidLevel(f"{node_id!r} is not a place")
        chain: list[str] = []
        seen = {node_id}
        current = self.parent(node_id)
        while current is not None:
            if current in seen:
                raise CycleDetected(f"containment cycle through {current!r}")
            seen.add(current)
            chain.append(current)
            current = self.parent(current)
        return chain

    def children(self, node_id: str, level: PlaceLevel) -> list[str]:
        if node_id not in self._nodes:
            raise UnknownNode(f"unknown node {node_id!r}")
        own_level = self.place_level(node_id)
        if own_level is None:
            raise InvalidLevel(f"{node_id!r} is not a place")
        if level.depth <= own_level.depth:
            raise InvalidLevel(
                f"level {level.value} is not below {own_level.value}"
            )
        found: list[str] = []
        seen = {node_id}
        frontier = [node_id]
        while frontier:
            current = frontier.pop()
            for t in self._in.get(current, []):
                if t.predicate != CONTAINED_IN or t.subject in seen:
                    continue
                seen.add(t.subject)
                frontier.append(t.subject)
                if self.place_level(t.subject) == level:
                    found.append(t.subject)
        return sorted(found)

    # -- resolution --------------------------------------------------------

    def resolve(self, descriptor: EntityDescriptor) -> Resolution:
        if descriptor.is_empty():
            raise EmptyDescriptor("descriptor has no fields")
        if descriptor.code is not None:
            candidates = sorted(self._by_code.get(descriptor.code, ()))
            candidates = self._filter_level(candidates, descriptor.level)
            return self._to_resolution(candidates)
        candidates = sorted(self._by_name.get(_fold_name(descriptor.name or ""), ()))
        candidates = self._filter_level(candidates, descriptor.level)
        if descriptor.ancestor_name is not None:
            wanted = _fold_name(descriptor.ancestor_name)
            candidates = [
                c
                for c in candidates
                if any(
                    _fold_name(self.node_name(a) or "") == wanted
                    for a in self._safe_ancestors(c)
                )
            ]
        return self._to_resolution(candidates)

    def _safe_ancestors(self, node_id: str) -> list[str]:
        if self.place_level(node_id) is None:
            return []
        try:
            return self.ancestors(node_id)
        except CycleDetected:
            return []

    def _filter_level(
        self, candidates: list[str], level: PlaceLevel | None
    ) -> list[str]:
        if level is None:
            return candidates
        return [c for c in candidates if self.place_level(c) == level]

    @staticmethod
    def _to_resolution(candidates: list[str]) -> Resolution:
        if not candidates:
            return Resolution.not_found()
        if len(candidates) == 1:
            return Resolution.unique(candidates[0])
        return Resolution.ambiguous(candidates)


REGISTRY_HEADER = ["node_id", "type", "name", "code", "parent_id"]


def load_place_registry(kg: KnowledgeGraph, content: str | bytes) -> int:
    """Bootstrap places from CSV ``node_id,type,name,code,parent_id``.

    Two passes so parents may appear after children.  Returns the number of
    places inserted.
    """
    if isinstance(content, bytes):
        content = content.decode("utf-8")
    reader = csv.reader(io.StringIO(content))
    rows = list(reader)
    if not rows or rows[0] != REGISTRY_HEADER:
        raise InvalidId(
            f"registry header must be {','.join(REGISTRY_HEADER)!r}"
        )
    records = [row for row in rows[1:] if row]
    for node_id, type_of, name, code, _parent in records:
        kg.insert_node(node_id, type_of, name)
        if code:
            kg.insert_triple(Triple(node_id, CODE, LiteralValue.text(code)))
    for node_id, _type, _name, _code, parent_id in records:
        if parent_id:
            kg.insert_triple(Triple(node_id, CONTAINED_IN, parent_id))
    return len(records)
