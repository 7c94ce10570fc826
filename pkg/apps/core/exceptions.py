"""
Exception classes and the API error handler.

Every lab error is an APIException so the same class serves the library,
the management commands and the HTTP surface. Error responses look like:
{
    "error": {
        "code": "error_code",
        "message": "Human-readable message",
        "details": {...}  // Optional additional context
    },
    "status_code": 400
}
"""

from typing import Optional, Dict, Any
from rest_framework.views import exception_handler
from rest_framework.exceptions import APIException, ValidationError
from rest_framework.response import Response
from rest_framework import status
import logging

logger = logging.getLogger(__name__)


def custom_exception_handler(exc: Exception, context: Dict[str, Any]) -> Optional[Response]:
    """
    Exception handler producing the structured error format above.
    """
    request = context.get('request')
    response = exception_handler(exc, context)

    log_extra = {
        'path': request.path if request else 'unknown',
        'method': request.method if request else 'unknown',
    }

    if response is None:
        logger.error(f"Unhandled exception: {exc}", exc_info=True, extra=log_extra)
        return Response(
            {
                'error': {
                    'code': 'internal_error',
                    'message': 'An unexpected error occurred',
                },
                'status_code': 500,
            },
            status=status.HTTP_500_INTERNAL_SERVER_ERROR
        )

    if response.status_code >= 500:
        logger.error(f"API error: {exc}", exc_info=True, extra=log_extra)
    elif response.status_code >= 400:
        logger.warning(f"API warning: {exc}", extra=log_extra)

    response.data = format_error(exc, response.status_code, response.data)
    return response


def format_error(exc: Exception, status_code: int, data: Any = None) -> Dict[str, Any]:
    """
    Format an exception into the standardized error payload.
    """
    error_code = getattr(exc, 'default_code', None) or _get_error_code(status_code)

    if isinstance(exc, ValidationError):
        message = 'Validation failed'
        details = data if isinstance(data, dict) else {'errors': data}
    elif isinstance(exc, LabError):
        message = exc.message
        details = exc.details
    elif hasattr(exc, 'detail'):
        message = str(exc.detail) if not isinstance(exc.detail, dict) else 'Request failed'
        details = exc.detail if isinstance(exc.detail, dict) else None
    else:
        message = str(exc)
        details = None

    error_response = {
        'error': {
            'code': error_code,
            'message': message,
        },
        'status_code': status_code,
    }
    if details:
        error_response['error']['details'] = details
    return error_response


def _get_error_code(status_code: int) -> str:
    if status_code == 400:
        return 'bad_request'
    elif status_code == 404:
        return 'not_found'
    elif status_code == 405:
        return 'method_not_allowed'
    elif status_code >= 500:
        return 'server_error'
    return 'unknown_error'


# =============================================================================
# LAB EXCEPTION CLASSES
# =============================================================================

class LabError(APIException):
    """Base class for every error raised by the lab apps."""

    status_code = status.HTTP_400_BAD_REQUEST
    default_detail = 'Laboratory error'
    default_code = 'lab_error'

    def __init__(self, message: Optional[str] = None, details: Optional[Dict[str, Any]] = None):
        self.message = message or str(self.default_detail)
        self.details = details or {}
        super().__init__(detail=self.message)

    def __str__(self) -> str:
        return self.message


class DimensionMismatchError(LabError, ValueError):
    """Raised when matrix and vector dimensions disagree."""

    default_detail = 'Dimension mismatch'
    default_code = 'dimension_mismatch'


class InvalidParameterError(LabError, ValueError):
    """Raised for out-of-range numeric parameters (p, beta, n, b, prime)."""

    default_detail = 'Invalid parameter'
    default_code = 'invalid_parameter'


class InvalidTemplateError(LabError, ValueError):
    """Raised when a template violates the template conditions."""

    default_detail = 'Invalid template'
    default_code = 'invalid_template'

    def __init__(self, violations: list, message: Optional[str] = None):
        self.violations = list(violations)
        super().__init__(
            message or '; '.join(v['message'] for v in self.violations) or str(self.default_detail),
            details={'violations': self.violations},
        )


class EnumerationLimitError(LabError, ValueError):
    """Raised when an exhaustive enumeration would exceed its configured cap."""

    default_detail = 'Enumeration limit exceeded'
    default_code = 'enumeration_limit'


class InvalidConfigError(LabError, ValueError):
    """Raised when a campaign configuration fails validation."""

    default_detail = 'Campaign configuration is invalid'
    default_code = 'invalid_config'


class MalformedResultsError(LabError, ValueError):
    """Raised when a result CSV cannot be summarized."""

    default_detail = 'Malformed result file'
    default_code = 'malformed_results'


class InternalInvariantError(LabError):
    """Raised when an invariant that only a bug can break is violated."""

    status_code = status.HTTP_500_INTERNAL_SERVER_ERROR
    default_detail = 'Internal invariant violated'
    default_code = 'internal_invariant'
