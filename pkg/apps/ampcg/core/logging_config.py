"""Structured logging configuration"""

import logging
import sys
from typing import Any, Dict

import structlog

from .config import settings


def configure_structlog() -> None:
    """Configure structured logging with proper processors and formatting"""

    logging.basicConfig(
        level=settings.log_level.upper(),
        format="%(message)s",
        stream=sys.stderr,
    )

    shared_processors = [
        structlog.contextvars.merge_contextvars,
        structlog.stdlib.filter_by_level,
        structlog.stdlib.add_logger_name,
        structlog.stdlib.add_log_level,
        structlog.stdlib.PositionalArgumentsFormatter(),
        structlog.processors.TimeStamper(fmt="iso"),
        structlog.processors.StackInfoRenderer(),
        structlog.processors.format_exc_info,
        structlog.processors.UnicodeDecoder(),
    ]

    if settings.debug:
        # Development: Pretty console output
        processors = shared_processors + [
            structlog.dev.ConsoleRenderer(colors=True)
        ]
    else:
        # Batch runs: JSON lines for later aggregation
        processors = shared_processors + [
            structlog.processors.dict_tracebacks,
            structlog.processors.JSONRenderer()
        ]

    structlog.configure(
        processors=processors,  # type: ignore[arg-type]
        wrapper_class=structlog.stdlib.BoundLogger,
        logger_factory=structlog.stdlib.LoggerFactory(),
        cache_logger_on_first_use=True,
    )


def bind_command_context(command: str, **kwargs: Any) -> None:
    """Attach the running subcommand to every log line"""
    structlog.contextvars.clear_contextvars()
    structlog.contextvars.bind_contextvars(command=command, service="ampcg", **kwargs)


# Domain event loggers
def log_learning_event(event_type: str, n_nodes: int, **kwargs) -> None:
    """Log learner phase events with consistent structure"""
    logger = structlog.get_logger("learner.events")
    logger.info(
        "learning_event",
        event_type=event_type,
        n_nodes=n_nodes,
        **kwargs
    )


def log_query_stats(total: int, by_size: Dict[int, int], **kwargs) -> None:
    """Log oracle usage"""
    logger = structlog.get_logger("metrics.oracle")
    logger.info(
        "oracle_query_stats",
        total=total,
        by_size={str(k): v for k, v in sorted(by_size.items())},
        **kwargs
    )


def log_verification_result(check: str, passed: bool, **kwargs) -> None:
    """Log analysis check outcomes; failures at warning level"""
    logger = structlog.get_logger("analysis.checks")
    if passed:
        logger.info("verification_check", check=check, passed=True, **kwargs)
    else:
        logger.warning("verification_check", check=check, passed=False, **kwargs)
