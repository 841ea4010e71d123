"""HTTP front end.

Thin JSON layer over Engine: every route validates input, delegates, and maps
engine errors onto status codes.  Pipeline failures come back as 400 with
{stage, message, position?}; conflicts are 409; unknown names are 404.  The
optional static directory (the bundled web UI) mounts at "/" after all API
routes, so API paths always win.
"""
from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from .engine import Engine
from .errors import (
    CatalogError,
    ConflictError,
    DuplicateRule,
    DuplicateTable,
    QsimError,
    QueryError,
    UnknownEntryPoint,
    UnknownRule,
    UnknownSyntax,
    UnknownTable,
)


class QueryBody(BaseModel):
    sql: str
    rules: list[str] | None = None
    estimator: str = "builtin"


class RulesBody(BaseModel):
    rules: list[str]


class DatasetBody(BaseModel):
    name: str
    csv: str


class EnabledBody(BaseModel):
    enabled: bool


def _error(stage: str, exc: QsimError, status: int = 400) -> JSONResponse:
    payload: dict = {"stage": stage, "message": exc.message}
    if exc.position is not None:
        payload["position"] = exc.position
    return JSONResponse(status_code=status, content=payload)


def default_ui_dir() -> Path | None:
    bundled = Path(__file__).parent / "webui"
    return bundled if (bundled / "index.html").is_file() else None


def create_app(engine: Engine | None = None,
               static_dir: Path | str | None = None) -> FastAPI:
    engine = engine if engine is not None else Engine()
    app = FastAPI(title="qsim")
    app.state.engine = engine

    @app.post("/query")
    def run_query(body: QueryBody):
        try:
            return engine.run_query(body.sql, rules=body.rules,
                                    estimator=body.estimator)
        except QueryError as exc:
            return _error(exc.stage, exc)

    @app.get("/session/rules")
    def get_session_rules():
        return {"rules": engine.get_session_rules()}

    @app.put("/session/rules")
    def put_session_rules(body: RulesBody):
        try:
            return {"rules": engine.set_session_rules(body.rules)}
        except (UnknownRule, DuplicateRule) as exc:
            return _error("rules", exc)

    @app.get("/rules")
    def list_rules():
        return {"rules": engine.rules_catalog()}

    @app.get("/history")
    def get_history():
        return {"history": engine.history()}

    @app.delete("/history")
    def clear_history():
        return {"cleared": engine.clear_history()}

    @app.get("/datasets")
    def list_datasets():
        return {"datasets": engine.datasets()}

    @app.post("/datasets", status_code=201)
    def add_dataset(body: DatasetBody):
        try:
            return engine.load_table(body.name, body.csv)
        except DuplicateTable as exc:
            return _error("catalog", exc, status=409)
        except CatalogError as exc:
            return _error("catalog", exc, status=400)

    @app.delete("/datasets/{name}")
    def drop_dataset(name: str):
        try:
            engine.drop_table(name)
        except UnknownTable as exc:
            return _error("catalog", exc, status=404)
        return {"dropped": name}

    @app.get("/syntaxes")
    def list_syntaxes():
        return {"syntaxes": engine.syntaxes()}

    @app.post("/syntaxes/{name}/enabled")
    def toggle_syntax(name: str, body: EnabledBody):
        try:
            engine.set_syntax_enabled(name, body.enabled)
        except UnknownSyntax as exc:
            return _error("registry", exc, status=404)
        except ConflictError as exc:
            return _error("registry", exc, status=409)
        return {"syntaxes": engine.syntaxes()}

    @app.post("/syntaxes/{name}/entrypoints/{entry_point}/enabled")
    def toggle_entry_point(name: str, entry_point: str, body: EnabledBody):
        try:
            engine.set_entry_point_enabled(name, entry_point, body.enabled)
        except (UnknownSyntax, UnknownEntryPoint) as exc:
            return _error("registry", exc, status=404)
        except ConflictError as exc:
            return _error("registry", exc, status=409)
        return {"syntaxes": engine.syntaxes()}

    ui_dir = Path(static_dir) if static_dir is not None else default_ui_dir()
    if ui_dir is not None and Path(ui_dir).is_dir():
        app.mount("/", StaticFiles(directory=str(ui_dir), html=True), name="ui")
    else:
        @app.get("/")
        def index():
            return {
                "service": "qsim",
                "endpoints": [
                    "POST /query", "GET|PUT /session/rules", "GET /rules",
                    "GET|DELETE /history", "GET|POST /datasets",
                    "DELETE /datasets/{name}", "GET /syntaxes",
                    "POST /syntaxes/{name}/enabled",
                    "POST /syntaxes/{name}/entrypoints/{entry_point}/enabled",
                ],
            }

    return app
