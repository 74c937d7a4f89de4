"""Fetching raw artifacts: local files or HTTP endpoints, hashed on arrival."""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path

import httpx

from ..errors import FetchFailed
from .spec import SourceSpec


@dataclass(frozen=True)
class RawArtifact:
    payload: bytes
    content_hash: str  # sha256 hex digest of payload
    fetched_at: str  # ISO-8601 UTC
    source_name: str


def _utc_now_iso() -> str:
    return datetime.now(timezone.utc).replace(microsecond=0).isoformat()


def fetch(spec: SourceSpec, timeout_seconds: float = 30.0) -> RawArtifact:
    """Retrieve the source payload and stamp it with its content digest."""
    kind = spec.fetch.kind
    location = spec.fetch.location
    if kind == "local-file":
        path = Path(location)
        if not path.is_absolute() and spec.base_dir is not None:
            path = spec.base_dir / path
        try:
            payload = path.read_bytes()
        except OSError as exc:
            raise FetchFailed(f"{spec.source_name}: cannot read {path}: {exc}") from exc
    else:
        try:
            response = httpx.get(location, timeout=timeout_seconds, follow_redirects=True)
            response.raise_for_status()
            payload = response.content
        except httpx.HTTPError as exc:
            raise FetchFailed(f"{spec.source_name}: GET {location} failed: {exc}") from exc
    return RawArtifact(
        payload=payload,
        content_hash=hashlib.sha256(payload).hexdigest(),
        fetched_at=_utc_now_iso(),
        source_name=spec.source_name,
    )
