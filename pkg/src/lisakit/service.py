"""Read-only HTTP service exposing bundle results and plot payloads.

All endpoints are GETs returning JSON bodies with a ``schemaVersion`` field.
Responses are rendered through :meth:`lisakit.bundle.Workspace.plot_bytes`,
the same function the export command uses, so served and exported payloads
are byte-identical.
"""

from __future__ import annotations

from fastapi import FastAPI, Query, Request
from fastapi.responses import Response
from fastapi.staticfiles import StaticFiles

from .bundle import SCHEMA_VERSION, Workspace, canonical_json
from .errors import IsolatedRegion, UnknownId
from .payloads import COLOR_MODE_AUTOCORRELATION, COLOR_MODE_LABEL

_JSON = "application/json"


def _error_response(status: int, code: str, message: str) -> Response:
    body = {"schemaVersion": SCHEMA_VERSION, "error": {"code": code, "message": message}}
    return Response(canonical_json(body), status_code=status, media_type=_JSON)


def create_app(workspace: Workspace, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="lisakit service", docs_url=None, redoc_url=None)
    ws = workspace

    @app.exception_handler(UnknownId)
    async def _unknown(request: Request, exc: UnknownId):
        return _error_response(404, "UnknownId", str(exc))

    @app.exception_handler(IsolatedRegion)
    async def _isolated(request: Request, exc: IsolatedRegion):
        return _error_response(422, "IsolatedRegion", str(exc))

    @app.get("/api/meta")
    def meta():
        return Response(canonical_json(ws.meta_body()), media_type=_JSON)

    @app.get("/api/results")
    def results():
        return Response(canonical_json(ws.results_body()), media_type=_JSON)

    @app.get("/api/geometry")
    def geometry():
        return Response(canonical_json(ws.geometry_body()), media_type=_JSON)

    @app.get("/api/plots/network")
    def network():
        return Response(ws.plot_bytes("network"), media_type=_JSON)

    @app.get("/api/plots/cluster-map")
    def cluster_map():
        return Response(ws.plot_bytes("cluster-map"), media_type=_JSON)

    @app.get("/api/plots/dual-density/{location_id}")
    def dual_density(location_id: str, mode: str = Query(COLOR_MODE_LABEL)):
        if mode not in (COLOR_MODE_LABEL, COLOR_MODE_AUTOCORRELATION):
            return _error_response(400, "BadMode", f"unknown color mode {mode!r}")
        return Response(
            ws.plot_bytes("dual-density", location_id, mode), media_type=_JSON
        )

    @app.get("/api/plots/radial/{location_id}")
    def radial(location_id: str):
        return Response(ws.plot_bytes("radial", location_id), media_type=_JSON)

    @app.get("/api/component/{location_id}")
    def component(location_id: str):
        return Response(canonical_json(ws.component_body(location_id)), media_type=_JSON)

    if static_dir:
        app.mount("/", StaticFiles(directory=static_dir, html=True), name="dashboard")

    return app
