"""FastAPI application serving the rectangle metric."""

import logging
from contextlib import asynccontextmanager
from typing import AsyncIterator, Optional

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .. import __version__
from ..config.settings import Settings, get_settings
from ..exceptions import GraspBenchError
from .routes import router

logger = logging.getLogger(__name__)


def create_app(settings: Optional[Settings] = None) -> FastAPI:
    """
    Create the metric API.

    Every route reads ``settings``; domain errors that escape a route become
    400 responses carrying the error's JSON form.

    Args:
        settings: Metric defaults; read from the environment when omitted
    """
    if settings is None:
        settings = get_settings()

    @asynccontextmanager
    async def lifespan(app: FastAPI) -> AsyncIterator[None]:
        logger.info(
            "Metric API v%s: jaccard %s (> %g), angle %s %g deg",
            __version__,
            settings.jaccard_mode,
            settings.jaccard_threshold,
            "<=" if settings.angle_inclusive else "<",
            settings.angle_threshold,
        )
        yield
        logger.info("Metric API stopped")

    app = FastAPI(
        title="graspbench metric API",
        description="Grasp rectangle metric, Jaccard index and angle classes",
        version=__version__,
        lifespan=lifespan,
    )
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET", "POST"],
        allow_headers=["*"],
    )
    app.include_router(router)
    app.dependency_overrides[get_settings] = lambda: settings
    app.state.settings = settings

    @app.exception_handler(GraspBenchError)
    async def domain_error(request: Request, exc: GraspBenchError) -> JSONResponse:
        logger.warning("%s on %s: %s", type(exc).__name__, request.url.path, exc.message)
        return JSONResponse(status_code=400, content={"detail": exc.to_dict()})

    @app.get("/")
    async def root():
        return {
            "message": f"graspbench metric API v{__version__}",
            "documentation": "/docs",
            "health": "/api/v1/health",
        }

    return app


app = create_app()
