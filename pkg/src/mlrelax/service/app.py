"""HTTP wiring: one POST endpoint per operation plus fixture access."""

from __future__ import annotations

from fastapi import FastAPI, HTTPException
from fastapi.responses import JSONResponse

import mlrelax
from mlrelax.errors import InputError
from mlrelax.fixtures import BUNDLED, bundled_doc

from . import handlers, schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="mlrelax",
        version=mlrelax.__version__,
        description=(
            "Exact linear relaxations of multilinear sets: bounds, flower "
            "separation, recursive linearizations, and machine checks."
        ),
    )

    @app.exception_handler(InputError)
    async def _input_error(_, exc: InputError):
        return JSONResponse(status_code=400, content={"detail": str(exc)})

    @app.get("/v1/health")
    def health() -> dict:
        return {"status": "ok", "version": mlrelax.__version__}

    @app.get("/v1/fixtures", response_model=list[schemas.FixtureInfoModel])
    def fixtures() -> list[schemas.FixtureInfoModel]:
        return [
            schemas.FixtureInfoModel(name=name, kind=kind)
            for name, (kind, _) in sorted(BUNDLED.items())
        ]

    @app.get("/v1/fixtures/{name}", response_model=schemas.FixtureDocModel)
    def fixture(name: str) -> schemas.FixtureDocModel:
        try:
            kind, doc = bundled_doc(name)
        except InputError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        return schemas.FixtureDocModel(name=name, kind=kind, document=doc)

    @app.post("/v1/bound", response_model=schemas.BoundReportModel)
    def bound(req: schemas.BoundRequest) -> schemas.BoundReportModel:
        return handlers.handle_bound(req)

    @app.post("/v1/check", response_model=schemas.CheckReportModel)
    def check(req: schemas.CheckRequest) -> schemas.CheckReportModel:
        return handlers.handle_check(req)

    @app.post("/v1/construct", response_model=schemas.ConstructResponse)
    def construct(req: schemas.ConstructRequest) -> schemas.ConstructResponse:
        return handlers.handle_construct(req)

    @app.post("/v1/flowers", response_model=schemas.FlowersResponse)
    def flowers(req: schemas.FlowersRequest) -> schemas.FlowersResponse:
        return handlers.handle_flowers(req)

    @app.post("/v1/separate", response_model=schemas.SeparateResponse)
    def separate(req: schemas.SeparateRequest) -> schemas.SeparateResponse:
        return handlers.handle_separate(req)

    return app


app = create_app()
