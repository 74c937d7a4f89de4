"""Enriching local answers from remote commons endpoints.

The remote protocol is this service's own series endpoint, so any other
instance of the platform is a valid remote.  Local data short-circuits:
remotes are only consulted on a local miss, in priority order, first
nonempty answer wins.  Remote failures become warnings, never client errors.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING

import httpx

from .config import ApiConfig, RemoteEndpoint

if TYPE_CHECKING:
    from ..platform import Platform


@dataclass(frozen=True)
class FederatedSeries:
    entity: str
    variable: str
    origin: str  # "local" | "remote:<name>" | "none"
    points: tuple[dict, ...]  # {"date", "value", "provenance"}
    warnings: tuple[str, ...] = ()


def local_series_points(platform: "Platform", entity: str, variable: str) -> tuple[dict, ...]:
    series = platform.stats.series(entity, variable)
    return tuple(
        {"date": str(p.date), "value": float(p.value), "provenance": p.provenance}
        for p in series.points
    )


def _query_remote(
    remote: RemoteEndpoint,
    entity: str,
    variable: str,
    timeout_ms: int,
    transport: httpx.BaseTransport | None,
) -> tuple[dict, ...]:
    url = remote.base_url.rstrip("/") + "/api/observations/series"
    with httpx.Client(
        timeout=timeout_ms / 1000.0, transport=transport
    ) as client:
        response = client.get(url, params={"entity": entity, "variable": variable})
    if response.status_code == 404:
        return ()
    response.raise_for_status()
    body = response.json()
    points = body.get("points")
    if not isinstance(points, list):
        raise ValueError("remote response has no points list")
    out = []
    for p in points:
        out.append(
            {
                "date": str(p["date"]),
                "value": float(p["value"]),
                "provenance": str(p.get("provenance", "")),
            }
        )
    return tuple(out)


def federated_series(
    platform: "Platform",
    entity: str,
    variable: str,
    config: ApiConfig,
    transport: httpx.BaseTransport | None = None,
) -> FederatedSeries:
    """Serve locally when possible; otherwise ask remotes in priority order."""
    local_known = platform.kg.has_node(entity) and platform.stats.has_variable(variable)
    if local_known:
        points = local_series_points(platform, entity, variable)
        if points:
            return FederatedSeries(
                entity=entity, variable=variable, origin="local", points=points
            )
    warnings: list[str] = []
    for remote in config.remotes:
        try:
            points = _query_remote(
                remote, entity, variable, config.request_timeout_ms, transport
            )
        except (httpx.HTTPError, ValueError, KeyError, TypeError) as exc:
            warnings.append(f"{remote.name}: {exc.__class__.__name__}: {exc}")
            continue
        if points:
            return FederatedSeries(
                entity=entity,
                variable=variable,
                origin=f"remote:{remote.name}",
                points=points,
                warnings=tuple(warnings),
            )
    return FederatedSeries(
        entity=entity,
        variable=variable,
        origin="none",
        points=(),
        warnings=tuple(warnings),
    )
