"""Read-only HTTP service over the knowledge graph and observation store.

All routes are GET; bodies are JSON with stable field order; errors share
the ``{status, code, message}`` envelope.  Each request reads under the
store's read lock, so responses always see a consistent snapshot.
"""

from __future__ import annotations

from datetime import datetime, timezone
from typing import TYPE_CHECKING

import httpx
from fastapi import FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse

from ..errors import (
    CommonsError,
    CycleDetected,
    EmptyDescriptor,
    EmptyRequest,
    InvalidDate,
    InvalidId,
    InvalidLevel,
    MultipleParents,
    UnknownEntity,
    UnknownNode,
    UnknownVariable,
)
from ..kg import EntityDescriptor, PlaceLevel, ResolutionStatus
from ..stats import LATEST
from ..values import LiteralValue
from .config import ApiConfig
from .federation import FederatedSeries, federated_series, local_series_points

if TYPE_CHECKING:
    from ..platform import Platform

_STATUS_BY_ERROR: tuple[tuple[type, int], ...] = (
    (UnknownNode, 404),
    (UnknownEntity, 404),
    (UnknownVariable, 404),
    (EmptyDescriptor, 400),
    (EmptyRequest, 400),
    (InvalidLevel, 400),
    (InvalidDate, 400),
    (InvalidId, 400),
    (CycleDetected, 500),
    (MultipleParents, 500),
)


def _error_status(exc: CommonsError) -> int:
    for klass, status in _STATUS_BY_ERROR:
        if isinstance(exc, klass):
            return status
    return 400


def api_error(status: int, code: str, message: str) -> JSONResponse:
    return JSONResponse(
        status_code=status,
        content={"status": status, "code": code, "message": message},
    )


def _missing(name: str) -> JSONResponse:
    return api_error(400, "missing_parameter", f"query parameter {name!r} is required")


def _csv_list(raw: str) -> list[str]:
    return [item for item in (part.strip() for part in raw.split(",")) if item]


def _triple_object(obj) -> dict:
    if isinstance(obj, str):
        return {"kind": "node", "value": obj}
    assert isinstance(obj, LiteralValue)
    return {"kind": obj.kind, "value": obj.render()}


def create_app(
    platform: "Platform",
    config: ApiConfig | None = None,
    federation_transport: httpx.BaseTransport | None = None,
) -> FastAPI:
    config = config or ApiConfig()
    platform.stats.source_preference = list(config.source_preference)
    app = FastAPI(title="statcommons", docs_url=None, redoc_url=None)
    app.state.platform = platform
    app.state.config = config

    @app.exception_handler(CommonsError)
    async def handle_domain_error(request: Request, exc: CommonsError):
        return api_error(_error_status(exc), exc.code, str(exc))

    @app.get("/api/node/{node_id:path}/triples")
    def node_triples(node_id: str, direction: str = "out", predicate: str | None = None):
        if direction not in ("out", "in"):
            return api_error(400, "invalid_direction", "direction must be out or in")
        with platform.read_lock():
            triples = (
                platform.kg.triples_out(node_id, predicate)
                if direction == "out"
                else platform.kg.triples_in(node_id, predicate)
            )
            return {
                "node": node_id,
                "direction": direction,
                "triples": [
                    {
                        "subject": t.subject,
                        "predicate": t.predicate,
                        "object": _triple_object(t.object),
                    }
                    for t in triples
                ],
            }

    @app.get("/api/observations/series")
    def observations_series(entity: str | None = None, variable: str | None = None):
        if entity is None:
            return _missing("entity")
        if variable is None:
            return _missing("variable")
        with platform.read_lock():
            if config.remotes:
                result = federated_series(
                    platform, entity, variable, config, transport=federation_transport
                )
                return _series_body(result)
            # no remotes configured: strict local contract (404 on unknown ids)
            points = local_series_points(platform, entity, variable)
            return _series_body(
                FederatedSeries(
                    entity=entity, variable=variable, origin="local", points=points
                )
            )

    @app.get("/api/observations/point")
    def observations_point(
        entities: str | None = None,
        variable: str | None = None,
        date: str | None = None,
    ):
        if entities is None:
            return _missing("entities")
        if variable is None:
            return _missing("variable")
        date_spec = date if date not in (None, "") else LATEST
        with platform.read_lock():
            rows = platform.stats.point(_csv_list(entities), variable, date_spec)
            return {
                "variable": variable,
                "date": date_spec,
                "observations": [
                    {
                        "entity": o.entity,
                        "date": str(o.date),
                        "value": float(o.value),
                        "unit": o.unit,
                        "provenance": o.provenance,
                    }
                    for o in rows
                ],
            }

    @app.get("/api/place/resolve")
    def place_resolve(
        name: str | None = None,
        level: str | None = None,
        ancestor: str | None = None,
        code: str | None = None,
    ):
        descriptor = EntityDescriptor(
            name=name,
            level=PlaceLevel.parse(level) if level else None,
            ancestor_name=ancestor,
            code=code,
        )
        with platform.read_lock():
            resolution = platform.kg.resolve(descriptor)
            if resolution.status == ResolutionStatus.NOT_FOUND:
                return api_error(404, "not_found", "no entity matches the description")
            if resolution.status == ResolutionStatus.UNIQUE:
                return _node_summary(platform, resolution.node_id)
            return {
                "candidates": [
                    _node_summary(platform, c) for c in resolution.candidates
                ]
            }

    @app.get("/api/place/{node_id:path}/children")
    def place_children(node_id: str, level: str | None = None):
        if level is None:
            return _missing("level")
        wanted = PlaceLevel.parse(level)
        with platform.read_lock():
            children = platform.kg.children(node_id, wanted)
            return {
                "place": node_id,
                "level": wanted.value,
                "children": [_node_summary(platform, c) for c in children],
            }

    @app.get("/api/variables")
    def variables_for_entity(entity: str | None = None):
        if entity is None:
            return _missing("entity")
        with platform.read_lock():
            ids = platform.stats.list_variables(entity)
            out = []
            for variable_id in ids:
                variable = platform.stats.variable(variable_id)
                out.append(
                    {
                        "id": variable.id,
                        "name": variable.name,
                        "unit": variable.unit,
                    }
                )
            return {"entity": entity, "variables": out}

    @app.get("/api/download")
    def download(
        entities: str | None = None,
        variables: str | None = None,
        date_from: str | None = Query(None, alias="from"),
        date_to: str | None = Query(None, alias="to"),
    ):
        if entities is None or not _csv_list(entities):
            return _missing("entities")
        if variables is None or not _csv_list(variables):
            return _missing("variables")
        date_range = None
        if date_from or date_to:
            date_range = (date_from or "0001", date_to or "9999")
        with platform.read_lock():
            payload = platform.stats.export_csv(
                _csv_list(entities), _csv_list(variables), date_range
            )
        stamp = datetime.now(timezone.utc).strftime("%Y%m%d%H%M%S")
        return Response(
            content=payload,
            media_type="text/csv; charset=utf-8",
            headers={
                "Content-Disposition": f'attachment; filename="{stamp}.csv"'
            },
        )

    return app


def _series_body(result: FederatedSeries) -> dict:
    return {
        "entity": result.entity,
        "variable": result.variable,
        "origin": result.origin,
        "points": list(result.points),
        "warnings": list(result.warnings),
    }


def _node_summary(platform: "Platform", node_id: str) -> dict:
    return {
        "id": node_id,
        "name": platform.kg.node_name(node_id),
        "type": platform.kg.node_type(node_id),
    }
