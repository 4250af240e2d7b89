"""Sentry wiring shared by the CLI, the harness and the service."""
import logging
from typing import Any, Optional

import sentry_sdk

logger = logging.getLogger(__name__)


def init_sentry(dsn: Optional[str], environment: str, release: str, component: str = "service") -> bool:
    """Initialize Sentry if a DSN is provided; return whether it was enabled."""

    if not dsn:
        logger.info("Sentry DSN not set; skipping Sentry init")
        return False

    sentry_sdk.init(
        dsn=dsn,
        environment=environment,
        release=release,
        traces_sample_rate=0.1,
    )
    sentry_sdk.set_tag("component", component)
    logger.info("Sentry initialized for %s", component)
    return True


def report_trial_failure(exc: BaseException, **context: Any) -> None:
    """Send a failed trial to Sentry with the seed and cell needed to replay it.

    A no-op when Sentry was never initialised.
    """

    with sentry_sdk.push_scope() as scope:
        for key, value in context.items():
            scope.set_extra(key, value)
        sentry_sdk.capture_exception(exc)
