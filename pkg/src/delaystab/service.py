"""Stateless HTTP JSON service exposing the pipeline.

POST /api/check, /api/region, /api/sweep, /api/verify; GET /api/health.
400 malformed request, 422 prerequisite failure (payload carries the
stabilizability report), 500 internal.
"""

from __future__ import annotations

import numpy as np
from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import pipeline
from .errors import DegenerateCase, DelayStabError, PlantValidationError
from .serialize import SCHEMA_VERSION


class PlantModel(BaseModel):
    gain: float
    delay: float
    time_constants: list[float]
    zero_constants: list[float] = Field(default_factory=list)


class CheckRequest(BaseModel):
    plant: PlantModel
    h_d: float | None = None


class RegionRequest(BaseModel):
    plant: PlantModel
    h: float


class SweepRequest(BaseModel):
    plant: PlantModel
    steps: int = 5


class VerifyRequest(BaseModel):
    plant: PlantModel
    h: float
    h_i: float
    h_d: float
    x_max: float = 30.0
    y_max: float = 40.0 * np.pi


def create_app() -> FastAPI:
    app = FastAPI(title="delaystab", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def malformed(request: Request, exc: RequestValidationError):
        return JSONResponse(
            status_code=400,
            content={"schema_version": SCHEMA_VERSION, "error": "malformed request"},
        )

    @app.exception_handler(PlantValidationError)
    async def bad_plant(request: Request, exc: PlantValidationError):
        return JSONResponse(
            status_code=400, content={"schema_version": SCHEMA_VERSION, "error": str(exc)}
        )

    @app.exception_handler(pipeline.PrerequisiteFailure)
    async def prerequisite(request: Request, exc: pipeline.PrerequisiteFailure):
        content = {
            "schema_version": SCHEMA_VERSION,
            "error": str(exc),
            "report": exc.report,
        }
        content.update(exc.extra)
        return JSONResponse(status_code=422, content=content)

    @app.exception_handler(DelayStabError)
    async def engine_error(request: Request, exc: DelayStabError):
        return JSONResponse(
            status_code=422, content={"schema_version": SCHEMA_VERSION, "error": str(exc)}
        )

    @app.get("/api/health")
    async def health():
        return {"status": "ok", "schema_version": SCHEMA_VERSION}

    @app.post("/api/check")
    async def check(req: CheckRequest):
        return pipeline.run_check(req.plant.model_dump(), h_d=req.h_d)

    @app.post("/api/region")
    async def region(req: RegionRequest):
        return pipeline.run_region(req.plant.model_dump(), req.h)

    @app.post("/api/sweep")
    async def sweep(req: SweepRequest):
        return pipeline.run_sweep(req.plant.model_dump(), req.steps)

    @app.post("/api/verify")
    async def verify(req: VerifyRequest):
        return pipeline.run_verify(
            req.plant.model_dump(), req.h, req.h_i, req.h_d, x_max=req.x_max, y_max=req.y_max
        )

    return app


app = create_app()


def serve(host: str = "127.0.0.1", port: int = 8000):
    import uvicorn

    uvicorn.run(app, host=host, port=port)
