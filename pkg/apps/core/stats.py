"""
Proportion estimates with Wilson score intervals.
"""

import math
from dataclasses import dataclass
from typing import Optional

from scipy.stats import norm

from .exceptions import InvalidParameterError


def wilson_interval(successes: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """
    Wilson score interval for a binomial proportion; (0, 1) when there are no trials.

    The interval is not degenerate for a single trial: at 95% one success
    gives about (0.21, 1.0) and one failure about (0.0, 0.79). Summary rows
    report the trial count next to the interval as ``decided``.
    """
    if not 0 < confidence < 1:
        raise InvalidParameterError('confidence must lie in (0, 1)', details={'confidence': confidence})
    if not 0 <= successes <= trials:
        raise InvalidParameterError(
            'Need 0 <= successes <= trials', details={'successes': successes, 'trials': trials}
        )
    if trials == 0:
        return 0.0, 1.0
    z = float(norm.ppf(0.5 + confidence / 2))
    phat = successes / trials
    denom = 1 + z * z / trials
    centre = (phat + z * z / (2 * trials)) / denom
    half = z * math.sqrt(phat * (1 - phat) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


@dataclass(frozen=True)
class Proportion:
    successes: int
    trials: int

    @property
    def value(self) -> Optional[float]:
        return self.successes / self.trials if self.trials else None

    def interval(self, confidence: float = 0.95) -> tuple[float, float]:
        return wilson_interval(self.successes, self.trials, confidence)

    def to_dict(self, confidence: float = 0.95) -> dict:
        low, high = self.interval(confidence)
        return {
            'successes': self.successes,
            'trials': self.trials,
            'estimate': self.value,
            'ci_low': low,
            'ci_high': high,
        }
