"""FastAPI entrypoint for the multicolor service."""
import logging
from typing import Dict

from fastapi import FastAPI, Response
from fastapi.openapi.utils import get_openapi
from prometheus_client import CONTENT_TYPE_LATEST

from .config import get_settings
from .logging_config import setup_logging
from .metrics import metrics_view
from .middleware import RequestContextMiddleware
from .observability import init_sentry
from .routers import coloring, graphs, health, sampling

settings = get_settings()
setup_logging(settings.log_level)
logger = logging.getLogger("multicolor")

app = FastAPI(
    title=settings.app_name,
    description=settings.description,
    version=settings.version,
    docs_url=settings.docs_url,
    redoc_url=settings.redoc_url,
    openapi_url=settings.openapi_url,
)

app.add_middleware(RequestContextMiddleware)

app.include_router(health.router)
app.include_router(graphs.router)
app.include_router(coloring.router)
app.include_router(sampling.router)


@app.get("/", tags=["Health"])
async def root() -> Dict[str, str]:
    """Simple welcome endpoint."""

    return {"message": f"{settings.app_name} is running"}


@app.get("/metrics", tags=["Observability"])
async def metrics() -> Response:
    """Expose Prometheus metrics."""
    return Response(content=metrics_view(), media_type=CONTENT_TYPE_LATEST)


def custom_openapi() -> dict:
    """Attach tag descriptions to the generated OpenAPI schema."""

    if app.openapi_schema:
        return app.openapi_schema

    openapi_schema = get_openapi(
        title=settings.app_name,
        version=settings.version,
        description=settings.description,
        routes=app.routes,
    )
    openapi_schema["tags"] = [
        {"name": "Graphs", "description": "Density witnesses and lower bounds"},
        {"name": "Coloring", "description": "Edge colouring, exact oracle and verification"},
        {"name": "Sampling", "description": "M(n,m) samples and theory-side predictions"},
        {"name": "Health", "description": "Service readiness"},
        {"name": "Observability", "description": "Prometheus metrics"},
    ]

    app.openapi_schema = openapi_schema
    return app.openapi_schema


app.openapi = custom_openapi


@app.on_event("startup")
async def on_startup() -> None:
    logger.info("Starting %s v%s", settings.app_name, settings.version)
    init_sentry(settings.sentry_dsn, settings.environment, settings.version)


@app.on_event("shutdown")
async def on_shutdown() -> None:
    logger.info("Shutting down %s", settings.app_name)
