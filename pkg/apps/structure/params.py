"""
Fixed constants of the iterative exposure: c, alpha, gamma, n' and k(n, p).
"""

import math
from dataclasses import dataclass
from typing import Optional

from apps.core.exceptions import InvalidParameterError


def block_size(n: int, p: float) -> int:
    """k(n, p) = floor(ln ln n / (2p))."""
    if n < 3:
        raise InvalidParameterError('k(n, p) needs n >= 3 so that ln ln n > 0', details={'n': n})
    if not 0 < p < 1:
        raise InvalidParameterError('p must lie in (0, 1)', details={'p': p})
    return math.floor(math.log(math.log(n)) / (2 * p))


def alpha_range(c: float) -> tuple[float, float]:
    """Open interval of alpha < 1 with alpha * c in (1/2, 3/4)."""
    return 1 / (2 * c), min(1.0, 3 / (4 * c))


@dataclass(frozen=True)
class RobustParams:
    n: int
    p: float
    k: int
    c: float
    alpha: float
    gamma: float
    n_prime: int

    def __post_init__(self):
        if not 0.5 < self.c < 1:
            raise InvalidParameterError('c must lie in (1/2, 1)', details={'c': self.c})
        low, high = alpha_range(self.c)
        if not low < self.alpha < high:
            raise InvalidParameterError(
                'alpha must satisfy alpha < 1 and alpha * c in (1/2, 3/4)',
                details={'alpha': self.alpha, 'c': self.c},
            )
        if self.k < 1:
            raise InvalidParameterError(
                'k(n, p) < 1: p is too large for this n', details={'n': self.n, 'p': self.p, 'k': self.k}
            )

    @classmethod
    def for_p(cls, n: int, p: float, c: float, alpha: Optional[float] = None) -> 'RobustParams':
        """Constants for an explicit p; alpha defaults to the middle of its range."""
        if alpha is None:
            alpha = sum(alpha_range(c)) / 2
        return cls(
            n=n,
            p=float(p),
            k=block_size(n, float(p)),
            c=c,
            alpha=alpha,
            gamma=alpha * c - 0.5,
            n_prime=math.ceil(alpha * n),
        )

    @classmethod
    def from_c(cls, n: int, c: float, alpha: Optional[float] = None) -> 'RobustParams':
        """Constants at p = c ln n / n."""
        return cls.for_p(n, c * math.log(n) / n, c, alpha)

    @property
    def low_degree_threshold(self) -> float:
        """ln ln n, the out-degree bound of the well-separated property."""
        return math.log(math.log(self.n))
