"""
Accessor for the HITMAT settings dict.
"""

from typing import Any

from django.conf import settings

from .exceptions import InvalidConfigError


def lab_setting(name: str) -> Any:
    """Return ``settings.HITMAT[name]``; unknown keys are a configuration error."""
    lab = getattr(settings, 'HITMAT', {})
    if name not in lab:
        raise InvalidConfigError(f"Unknown laboratory setting '{name}'")
    return lab[name]
