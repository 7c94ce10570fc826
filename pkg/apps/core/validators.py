"""
Parameter coercion shared by the lab apps.

Each helper returns the normalised value or raises InvalidParameterError.
"""

from fractions import Fraction
from typing import Any, Union

from .constants import ErrorMessages, Model
from .exceptions import InvalidParameterError

ProbabilityLike = Union[int, float, str, Fraction]


def as_model(value: Any) -> Model:
    try:
        return Model(value)
    except ValueError:
        raise InvalidParameterError(
            f"Unknown model '{value}'",
            details={'model': value, 'choices': [m.value for m in Model]},
        )


def as_probability(p: ProbabilityLike, *, open_low: bool = False, open_high: bool = False) -> Fraction:
    """Exact rational copy of p, checked against [0, 1] (optionally open ends)."""
    try:
        value = Fraction(p)
    except (TypeError, ValueError, ZeroDivisionError):
        raise InvalidParameterError(f"'{p}' is not a number", details={'p': str(p)})
    low_ok = value > 0 if open_low else value >= 0
    high_ok = value < 1 if open_high else value <= 1
    if not (low_ok and high_ok):
        raise InvalidParameterError(ErrorMessages.PROBABILITY_RANGE, details={'p': str(p)})
    return value


def as_dimension(n: Any, minimum: int = 1) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < minimum:
        raise InvalidParameterError(f"Dimension must be an integer >= {minimum}", details={'n': n})
    return n


def as_seed(seed: Any) -> int:
    if isinstance(seed, bool) or not isinstance(seed, int) or not 0 <= seed < (1 << 64):
        raise InvalidParameterError('Seed must be an integer in [0, 2^64)', details={'seed': seed})
    return seed
