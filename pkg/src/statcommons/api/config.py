"""Service configuration: bind address, remotes, source preference, timeouts.

The bind address can be overridden by the ``BDC_BIND`` environment
variable so deployments can rebind without editing the config file.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

import yaml

from ..errors import SpecError

BIND_ENV_VAR = "BDC_BIND"


@dataclass(frozen=True)
class RemoteEndpoint:
    name: str
    base_url: str


@dataclass(frozen=True)
class ApiConfig:
    bind_address: str = "127.0.0.1:8400"
    remotes: tuple[RemoteEndpoint, ...] = ()
    source_preference: tuple[str, ...] = ()
    request_timeout_ms: int = 2000
    store_dir: Path | None = None

    def __post_init__(self) -> None:
        if self.request_timeout_ms <= 0:
            raise SpecError("request_timeout_ms must be > 0")
        names = [r.name for r in self.remotes]
        if len(set(names)) != len(names):
            raise SpecError(f"remote names must be unique: {names}")

    @property
    def host(self) -> str:
        return self.bind_address.rsplit(":", 1)[0]

    @property
    def port(self) -> int:
        return int(self.bind_address.rsplit(":", 1)[1])


def load_api_config(path: str | Path | None, env: dict | None = None) -> ApiConfig:
    env = os.environ if env is None else env
    doc = {}
    base_dir = None
    if path is not None:
        path = Path(path)
        try:
            doc = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
        except (OSError, yaml.YAMLError) as exc:
            raise SpecError(f"cannot load config {path}: {exc}") from exc
        base_dir = path.parent
    bind = env.get(BIND_ENV_VAR) or doc.get("bind", "127.0.0.1:8400")
    remotes = tuple(
        RemoteEndpoint(name=r["name"], base_url=r["base_url"])
        for r in doc.get("remotes", [])
    )
    store_dir = doc.get("store")
    if store_dir is not None:
        store_dir = Path(store_dir)
        if not store_dir.is_absolute() and base_dir is not None:
            store_dir = base_dir / store_dir
    return ApiConfig(
        bind_address=bind,
        remotes=remotes,
        source_preference=tuple(doc.get("source_preference", [])),
        request_timeout_ms=doc.get("request_timeout_ms", 2000),
        store_dir=store_dir,
    )
