"""Exception hierarchy and error handling helpers"""

from enum import Enum
from functools import wraps
from typing import Any, Dict, Iterable, NoReturn, Optional

import structlog


logger = structlog.get_logger(__name__)


class ErrorCode(Enum):
    """Standardized error codes, grouped by subsystem"""

    # Graph construction / parsing
    GRAPH_PARSE_FAILED = "GRAPH_001"
    GRAPH_DUPLICATE_EDGE = "GRAPH_002"
    GRAPH_SELF_LOOP = "GRAPH_003"
    GRAPH_UNKNOWN_NODE = "GRAPH_004"
    GRAPH_NOT_CHAIN = "GRAPH_005"
    GRAPH_NODE_MISMATCH = "GRAPH_006"

    # Separation queries
    SEPARATION_QUERY_INVALID = "SEPARATION_001"

    # Oracles
    ORACLE_QUERY_UNSUPPORTED = "ORACLE_001"

    # Data / statistics
    DATA_SINGULAR = "DATA_001"
    DATA_INSUFFICIENT = "DATA_002"
    DATA_FORMAT_INVALID = "DATA_003"
    DATA_NOT_POSITIVE_DEFINITE = "DATA_004"

    # Analysis
    GUARD_EXCEEDED = "ANALYSIS_001"

    # CLI / IO
    CLI_USAGE = "CLI_001"
    IO_FAILED = "CLI_002"

    # System
    INTERNAL_ERROR = "SYSTEM_001"


class AmpCgError(Exception):
    """Base exception class for all toolkit errors"""

    def __init__(
        self,
        message: str,
        error_code: ErrorCode,
        context: Optional[Dict[str, Any]] = None,
        cause: Optional[Exception] = None,
    ):
        self.message = message
        self.error_code = error_code
        self.context = context or {}
        self.cause = cause

        super().__init__(message)

        logger.debug(
            "ampcg_error",
            error_code=error_code.value,
            message=message,
            context=self.context,
            caused_by=str(cause) if cause else None,
        )


class GraphError(AmpCgError):
    """Malformed graphs, unknown nodes, failed chain-graph validation"""

    def __init__(self, message: str, error_code: ErrorCode = ErrorCode.GRAPH_PARSE_FAILED, **kwargs):
        super().__init__(message, error_code, **kwargs)


class SeparationError(AmpCgError):
    """Ill-formed separation queries"""

    def __init__(self, message: str, error_code: ErrorCode = ErrorCode.SEPARATION_QUERY_INVALID, **kwargs):
        super().__init__(message, error_code, **kwargs)


class OracleError(AmpCgError):
    """Queries an oracle cannot answer"""

    def __init__(self, message: str, error_code: ErrorCode = ErrorCode.ORACLE_QUERY_UNSUPPORTED, **kwargs):
        super().__init__(message, error_code, **kwargs)


class DataError(AmpCgError):
    """Degenerate or insufficient data, bad dataset files"""

    def __init__(self, message: str, error_code: ErrorCode = ErrorCode.DATA_SINGULAR, **kwargs):
        super().__init__(message, error_code, **kwargs)


class GuardExceededError(AmpCgError):
    """Combinatorial routine called on a graph larger than its guard"""

    def __init__(self, message: str, error_code: ErrorCode = ErrorCode.GUARD_EXCEEDED, **kwargs):
        super().__init__(message, error_code, **kwargs)


class CliUsageError(AmpCgError):
    """Bad command-line usage"""

    def __init__(self, message: str, error_code: ErrorCode = ErrorCode.CLI_USAGE, **kwargs):
        super().__init__(message, error_code, **kwargs)


class ErrorContext:
    """Context manager for consistent error handling and logging"""

    def __init__(self, operation: str, **context):
        self.operation = operation
        self.context = context
        self.logger = structlog.get_logger(__name__)

    def __enter__(self):
        self.logger.info(f"{self.operation}_started", **self.context)
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        if exc_type is None:
            self.logger.info(f"{self.operation}_completed", **self.context)
        else:
            self.logger.error(
                f"{self.operation}_failed",
                exception_type=exc_type.__name__,
                exception_message=str(exc_val),
                **self.context,
            )
        return False  # Don't suppress exceptions


def handle_errors(operation: str, default_error_code: ErrorCode = ErrorCode.INTERNAL_ERROR):
    """Decorator converting unexpected exceptions into AmpCgError"""

    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            try:
                with ErrorContext(operation, function=func.__name__):
                    return func(*args, **kwargs)
            except AmpCgError:
                raise
            except Exception as e:
                raise AmpCgError(
                    message=f"Unexpected error in {operation}: {e}",
                    error_code=default_error_code,
                    context={"function": func.__name__},
                    cause=e,
                ) from e
        return wrapper
    return decorator


def raise_guard_exceeded(operation: str, n_nodes: int, limit: int) -> NoReturn:
    """Raise standardized guard error"""
    raise GuardExceededError(
        message=f"{operation} supports at most {limit} nodes, got {n_nodes}",
        context={"operation": operation, "n_nodes": n_nodes, "limit": limit},
    )


def raise_unknown_node(names: Iterable[str]) -> NoReturn:
    """Raise standardized unknown-node error"""
    missing = sorted(names)
    raise GraphError(
        message=f"Unknown node(s): {', '.join(missing)}",
        error_code=ErrorCode.GRAPH_UNKNOWN_NODE,
        context={"nodes": missing},
    )
