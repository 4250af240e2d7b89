"""Health and readiness endpoints."""
from datetime import datetime

from fastapi import APIRouter

from ..config import get_settings

router = APIRouter(prefix="/health", tags=["Health"])


@router.get("", summary="Service healthcheck")
async def healthcheck() -> dict:
    """Return simple health status."""

    settings = get_settings()
    return {
        "status": "ok",
        "timestamp": datetime.utcnow().isoformat(),
        "service": settings.app_name,
        "version": settings.version,
    }
